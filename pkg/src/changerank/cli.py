"""Command-line front end.

Two commands:

    changerank analyze SOURCE          one sequence -> JSON report (or CSV series)
    changerank rank SOURCE SOURCE...   several sequences -> JSON ranking

A source is an animated GIF or a directory of still frames. Output is
deterministic: fixed key order, floats at 9 decimal places, so identical
inputs and flags produce byte-identical bytes. Exit codes: 0 success,
1 runtime/decode failure, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .analysis import (
    DEFAULT_RECIPROCAL_CAP,
    PairRecord,
    RankingReport,
    ReciprocalSeries,
    SequenceReport,
    analyze_sequence,
    compare_sequences,
    reciprocal_series,
)
from .infotheory import NormalizationMode
from .ingest import PreprocessConfig, SequenceDecodeError, SequenceSource, decode_sequence

__all__ = [
    "CliConfig",
    "build_parser",
    "cmd_analyze",
    "cmd_rank",
    "main",
    "entrypoint",
    "render_sequence_report",
    "render_ranking_report",
    "render_series_csv",
    "render_reciprocal_svg",
    "sequence_report_from_json",
    "ranking_report_from_json",
]


@dataclass(frozen=True)
class CliConfig:
    command: str
    inputs: tuple[str, ...]
    bins: int = 256
    scale: float = 1.0
    mode: NormalizationMode = NormalizationMode.UC_PREV
    out_format: str = "json"
    plot_path: str | None = None
    reciprocal_cap: float = DEFAULT_RECIPROCAL_CAP


def _fmt(value: float) -> str:
    return f"{value:.9f}"


# ---------------------------------------------------------------------------
# Report rendering and parsing
# ---------------------------------------------------------------------------

def _pair_json(record: PairRecord) -> str:
    degenerate = "true" if record.degenerate else "false"
    return (
        '{"t": %d, "uc": %s, "mi": %s, "h_prev": %s, "h_next": %s, "degenerate": %s}'
        % (
            record.index,
            _fmt(record.uc),
            _fmt(record.mi),
            _fmt(record.h_prev),
            _fmt(record.h_next),
            degenerate,
        )
    )


def _sequence_report_lines(report: SequenceReport, pad: str) -> list[str]:
    lines = [pad + "{"]
    inner = pad + "  "
    lines.append(f'{inner}"id": {json.dumps(report.id)},')
    lines.append(f'{inner}"frame_count": {report.frame_count},')
    lines.append(f'{inner}"mode": "{report.mode.value}",')
    lines.append(f'{inner}"bins": {report.preprocess.levels},')
    lines.append(f'{inner}"scale": {_fmt(report.preprocess.scale_factor)},')
    lines.append(f'{inner}"pairs": [')
    for i, record in enumerate(report.pairs):
        comma = "," if i < len(report.pairs) - 1 else ""
        lines.append(f"{inner}  {_pair_json(record)}{comma}")
    lines.append(f"{inner}],")
    lines.append(f'{inner}"target_index": {report.target_index},')
    lines.append(f'{inner}"target_value": {_fmt(report.target_value)}')
    lines.append(pad + "}")
    return lines


def render_sequence_report(report: SequenceReport) -> str:
    return "\n".join(_sequence_report_lines(report, "")) + "\n"


def render_ranking_report(ranking: RankingReport) -> str:
    lines = ["{", '  "entries": [']
    for i, entry in enumerate(ranking.entries):
        entry_lines = _sequence_report_lines(entry, "    ")
        if i < len(ranking.entries) - 1:
            entry_lines[-1] += ","
        lines.extend(entry_lines)
    lines.append("  ],")
    lines.append(f'  "winner": {json.dumps(ranking.winner)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _sequence_report_from_dict(data: dict) -> SequenceReport:
    pairs = tuple(
        PairRecord(
            index=p["t"],
            uc=p["uc"],
            mi=p["mi"],
            h_prev=p["h_prev"],
            h_next=p["h_next"],
            degenerate=p["degenerate"],
        )
        for p in data["pairs"]
    )
    return SequenceReport(
        id=data["id"],
        frame_count=data["frame_count"],
        pairs=pairs,
        target_index=data["target_index"],
        target_value=data["target_value"],
        mode=NormalizationMode(data["mode"]),
        preprocess=PreprocessConfig(scale_factor=data["scale"], levels=data["bins"]),
    )


def sequence_report_from_json(text: str) -> SequenceReport:
    """Parse an emitted sequence report back into its structured form."""
    return _sequence_report_from_dict(json.loads(text))


def ranking_report_from_json(text: str) -> RankingReport:
    data = json.loads(text)
    entries = tuple(_sequence_report_from_dict(entry) for entry in data["entries"])
    return RankingReport(entries=entries, winner=data["winner"])


def render_series_csv(pairs: Sequence[PairRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", "uc", "mi", "h_prev", "h_next", "degenerate"])
    for record in pairs:
        writer.writerow(
            [
                record.index,
                _fmt(record.uc),
                _fmt(record.mi),
                _fmt(record.h_prev),
                _fmt(record.h_next),
                "true" if record.degenerate else "false",
            ]
        )
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# SVG plot of the reciprocal-UC series
# ---------------------------------------------------------------------------

SVG_WIDTH = 720
SVG_HEIGHT = 400
SVG_MARGIN_LEFT = 64
SVG_MARGIN_RIGHT = 20
SVG_MARGIN_TOP = 34
SVG_MARGIN_BOTTOM = 46


def render_reciprocal_svg(
    series: ReciprocalSeries, target_index: int, title: str
) -> str:
    """Line plot of 1/uc per adjacent pair, with a red vertical marker on the
    most abrupt change point."""
    values = series.values
    n = len(values)
    plot_w = SVG_WIDTH - SVG_MARGIN_LEFT - SVG_MARGIN_RIGHT
    plot_h = SVG_HEIGHT - SVG_MARGIN_TOP - SVG_MARGIN_BOTTOM
    y_max = max(values) * 1.08
    if y_max <= 0:
        y_max = 1.0

    def x_pos(t: int) -> float:
        if n == 1:
            return SVG_MARGIN_LEFT + plot_w / 2
        return SVG_MARGIN_LEFT + plot_w * t / (n - 1)

    def y_pos(v: float) -> float:
        return SVG_MARGIN_TOP + plot_h * (1 - v / y_max)

    axis_bottom = SVG_MARGIN_TOP + plot_h
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{SVG_MARGIN_LEFT}" y="20" font-family="sans-serif" '
        f'font-size="14" fill="#222">{escape(title)}</text>',
        f'<line x1="{SVG_MARGIN_LEFT}" y1="{axis_bottom}" '
        f'x2="{SVG_WIDTH - SVG_MARGIN_RIGHT}" y2="{axis_bottom}" stroke="#333"/>',
        f'<line x1="{SVG_MARGIN_LEFT}" y1="{SVG_MARGIN_TOP}" '
        f'x2="{SVG_MARGIN_LEFT}" y2="{axis_bottom}" stroke="#333"/>',
    ]

    for fraction in (0.0, 0.25, 0.5, 0.75, 1.0):
        v = y_max * fraction
        y = y_pos(v)
        lines.append(
            f'<line x1="{SVG_MARGIN_LEFT - 4}" y1="{y:.2f}" '
            f'x2="{SVG_MARGIN_LEFT}" y2="{y:.2f}" stroke="#333"/>'
        )
        lines.append(
            f'<text x="{SVG_MARGIN_LEFT - 8}" y="{y + 4:.2f}" font-family="sans-serif" '
            f'font-size="11" fill="#333" text-anchor="end">{v:.2f}</text>'
        )

    tick_step = max(1, (n + 9) // 10)
    for t in range(0, n, tick_step):
        x = x_pos(t)
        lines.append(
            f'<line x1="{x:.2f}" y1="{axis_bottom}" '
            f'x2="{x:.2f}" y2="{axis_bottom + 4}" stroke="#333"/>'
        )
        lines.append(
            f'<text x="{x:.2f}" y="{axis_bottom + 18}" font-family="sans-serif" '
            f'font-size="11" fill="#333" text-anchor="middle">{t}</text>'
        )

    marker_x = x_pos(target_index)
    lines.append(
        f'<line x1="{marker_x:.2f}" y1="{SVG_MARGIN_TOP}" x2="{marker_x:.2f}" '
        f'y2="{axis_bottom}" stroke="#d62728" stroke-width="1.5" '
        f'stroke-dasharray="5,3" class="target-marker"/>'
    )

    points = " ".join(f"{x_pos(t):.2f},{y_pos(v):.2f}" for t, v in enumerate(values))
    lines.append(
        f'<polyline points="{points}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
    )
    for t, v in enumerate(values):
        lines.append(
            f'<circle cx="{x_pos(t):.2f}" cy="{y_pos(v):.2f}" r="2.5" fill="#1f77b4"/>'
        )

    lines.append(
        f'<text x="{SVG_MARGIN_LEFT + plot_w / 2:.2f}" y="{SVG_HEIGHT - 10}" '
        f'font-family="sans-serif" font-size="12" fill="#222" '
        f'text-anchor="middle">adjacent pair index</text>'
    )
    lines.append(
        f'<text x="16" y="{SVG_MARGIN_TOP + plot_h / 2:.2f}" font-family="sans-serif" '
        f'font-size="12" fill="#222" text-anchor="middle" '
        f'transform="rotate(-90 16 {SVG_MARGIN_TOP + plot_h / 2:.2f})">1 / UC</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _fail(message: str) -> int:
    print(f"changerank: error: {message}", file=sys.stderr)
    return 1


def _analyze_one(path: str, cfg: CliConfig) -> SequenceReport:
    source = SequenceSource.from_path(path)
    preprocess = PreprocessConfig(scale_factor=cfg.scale, levels=cfg.bins)
    frames = decode_sequence(source, preprocess)
    return analyze_sequence(source.id, frames, cfg.mode, preprocess)


def cmd_analyze(cfg: CliConfig) -> int:
    try:
        report = _analyze_one(cfg.inputs[0], cfg)
    except (SequenceDecodeError, ValueError) as exc:
        return _fail(str(exc))
    if cfg.out_format == "csv":
        sys.stdout.write(render_series_csv(report.pairs))
    else:
        sys.stdout.write(render_sequence_report(report))
    if cfg.plot_path is not None:
        series = reciprocal_series(report.pairs, cfg.reciprocal_cap)
        svg = render_reciprocal_svg(series, report.target_index, report.id)
        try:
            Path(cfg.plot_path).write_text(svg, encoding="utf-8")
        except OSError as exc:
            return _fail(f"cannot write plot {cfg.plot_path}: {exc}")
    return 0


def cmd_rank(cfg: CliConfig) -> int:
    reports = []
    for path in cfg.inputs:
        try:
            reports.append(_analyze_one(path, cfg))
        except (SequenceDecodeError, ValueError) as exc:
            return _fail(f"input {path}: {exc}")
    ranking = compare_sequences(reports)
    sys.stdout.write(render_ranking_report(ranking))
    for position, entry in enumerate(ranking.entries, start=1):
        print(
            f"{position}. {entry.id}: target_value={_fmt(entry.target_value)} "
            f"at pair {entry.target_index} ({entry.frame_count} frames)",
            file=sys.stderr,
        )
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="changerank",
        description="Quantify and rank change in image sequences via "
        "uncertainty coefficients between adjacent frames.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--bins", type=int, default=256, metavar="N",
        help="intensity quantization levels (default: 256)",
    )
    common.add_argument(
        "--scale", type=float, default=1.0, metavar="F",
        help="spatial downscale factor in (0, 1] (default: 1.0)",
    )
    common.add_argument(
        "--mode", choices=["uc", "symmetric", "mi"], default="uc",
        help="pair score normalization (default: uc)",
    )
    common.add_argument(
        "--format", dest="out_format", choices=["json", "csv"], default="json",
        help="output format (default: json)",
    )
    common.add_argument(
        "--reciprocal-cap", type=float, default=DEFAULT_RECIPROCAL_CAP, metavar="X",
        help="ceiling for 1/uc plot values when uc is zero (default: 1e6)",
    )

    analyze = subparsers.add_parser(
        "analyze", parents=[common],
        help="score one sequence and locate its most abrupt change",
    )
    analyze.add_argument("input", help="animated image file or frame directory")
    analyze.add_argument(
        "--plot", dest="plot_path", metavar="PATH", default=None,
        help="write an SVG of the reciprocal-UC series to PATH",
    )

    rank = subparsers.add_parser(
        "rank", parents=[common],
        help="rank two or more sequences by change level",
    )
    rank.add_argument("inputs", nargs="+", help="two or more sequence sources")

    return parser


def _config_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> CliConfig:
    if not 2 <= args.bins <= 65536:
        parser.error(f"--bins must be in [2, 65536], got {args.bins}")
    if not 0.0 < args.scale <= 1.0:
        parser.error(f"--scale must be in (0, 1], got {args.scale}")
    if args.reciprocal_cap <= 0:
        parser.error(f"--reciprocal-cap must be positive, got {args.reciprocal_cap}")
    if args.command == "analyze":
        inputs = (args.input,)
        plot_path = args.plot_path
    else:
        if len(args.inputs) < 2:
            parser.error("rank needs at least 2 inputs")
        if args.out_format == "csv":
            parser.error("rank emits JSON only; CSV is defined for per-pair series")
        inputs = tuple(args.inputs)
        plot_path = None
    return CliConfig(
        command=args.command,
        inputs=inputs,
        bins=args.bins,
        scale=args.scale,
        mode=NormalizationMode(args.mode),
        out_format=args.out_format,
        plot_path=plot_path,
        reciprocal_cap=args.reciprocal_cap,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(parser, args)
    if cfg.command == "analyze":
        return cmd_analyze(cfg)
    return cmd_rank(cfg)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
