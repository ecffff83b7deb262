"""Command-line entry point: ``mckay {roots,quiver,walls,partition,check}``.

Exit codes: 0 on success or a passing check, 1 when a check finds a
mismatch, 2 for usage errors (bad label, bad zeta, zeta on a wall, ...).

Partition results can be cached on disk, keyed by a hash of the canonical
JSON config. The cache status goes to stderr so that stdout stays
byte-identical between a fresh computation and a cache hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from .d5 import verify_d5_example
from .errors import LabelError, NonGenericError
from .invariants import (
    KINDS,
    check_bps,
    check_crepant,
    check_gw_pt,
    gw_context,
    partition_function,
    q_context,
    render_family_factor,
)
from .quiver import crossed_walls, mckay_quiver, superpotential, walls
from .roots import (
    DynkinLabel,
    affine_positive_real_roots,
    finite_positive_roots,
    imaginary_root,
)
from .series import MultiSeries

OUTPUTS = ("json", "plain", "factors")
CHECKS = ("gw-pt", "crepant", "d5", "bps")
CACHE_VERSION = 1
LABEL_GRAMMAR = "family letter A, D or E followed by a rank, e.g. A3, D5, E7 (case-insensitive)"


class UsageError(Exception):
    pass


def parse_label(text: str) -> DynkinLabel:
    try:
        return DynkinLabel.parse(text)
    except LabelError as exc:
        raise argparse.ArgumentTypeError(f"invalid label {text!r}; accepted: {LABEL_GRAMMAR}")


def parse_zeta(text: str) -> tuple[Fraction, ...]:
    """Comma-separated integers or p/q rationals."""
    try:
        values = tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"invalid zeta {text!r}; expected comma-separated integers or p/q rationals"
        )
    if any("." in part for part in text.split(",")):
        raise argparse.ArgumentTypeError("zeta entries must be exact (integers or p/q), not decimals")
    return values


@dataclass(frozen=True)
class RunConfig:
    label: DynkinLabel
    order: int
    kind: str
    zeta: tuple[Fraction, ...] | None = None
    output: str = "json"
    cache_dir: Path | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind == "Chamber" and self.zeta is None:
            raise UsageError("--kind Chamber needs --zeta")
        if self.kind != "Chamber" and self.zeta is not None:
            raise UsageError(f"--zeta is only allowed with --kind Chamber, not {self.kind}")
        if self.zeta is not None and len(self.zeta) != self.label.num_irreps:
            raise UsageError(
                f"zeta for {self.label} needs {self.label.num_irreps} entries, got {len(self.zeta)}"
            )
        if self.order < 0:
            raise UsageError("--order must be >= 0")
        if self.output not in OUTPUTS:
            raise UsageError(f"unknown output {self.output!r}")

    def canonical(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "label": str(self.label),
            "kind": self.kind,
            "order": self.order,
            "zeta": None if self.zeta is None else [str(v) for v in self.zeta],
        }

    def cache_key(self) -> str:
        text = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


# -- cache --------------------------------------------------------------------


def resolve_cache_dir(args) -> Path | None:
    if args.no_cache:
        return None
    path = args.cache_dir or os.environ.get("MCKAY_CACHE_DIR")
    return Path(path) if path else None


def cache_load(config: RunConfig):
    if config.cache_dir is None:
        return None
    path = config.cache_dir / f"{config.cache_key()}.json"
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("config") != config.canonical():
        return None
    return data


def cache_store(config: RunConfig, series: MultiSeries, assumed_dt_pt: bool) -> None:
    """Write-temp-then-rename, so readers never see a partial file."""
    if config.cache_dir is None:
        return
    config.cache_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "config": config.canonical(),
        "assumed_dt_pt": assumed_dt_pt,
        "series": series.to_dict(),
        "cached_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    fd, tmp = tempfile.mkstemp(dir=config.cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, config.cache_dir / f"{config.cache_key()}.json")
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _timestamp():
    # Only a pinned build time is reported; wall-clock time would break determinism.
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if not epoch:
        return None
    return datetime.fromtimestamp(int(epoch), timezone.utc).isoformat(timespec="seconds")


# -- output helpers --------------------------------------------------------------


def emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def emit_json(data) -> None:
    emit(json.dumps(data, indent=2))


def plain_series(series: MultiSeries) -> str:
    """Terms one per line with the coefficient column right-aligned."""
    rows = [(str(c), mono) for c, mono in _split_terms(series)]
    if not rows:
        return "0"
    width = max(len(c) for c, _ in rows)
    return "\n".join(f"{c:>{width}} * {m}" if m else f"{c:>{width}}" for c, m in rows)


def _split_terms(series: MultiSeries):
    names = series.context.var_names
    for exp, c in series.terms():
        mono = " ".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
        yield c, mono


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


# -- subcommands ------------------------------------------------------------------


def cmd_roots(args) -> int:
    label = args.label
    if args.output == "factors":
        raise UsageError("--output factors only applies to partition")
    if not args.affine:
        if args.bound is not None:
            raise UsageError("--bound needs --affine")
        roots = finite_positive_roots(label)
        if args.output == "json":
            emit_json({"label": str(label), "affine": False, "roots": [list(r) for r in roots]})
        else:
            emit("\n".join(_vec(r) for r in roots))
        return 0
    if args.bound is None:
        raise UsageError("--affine needs --bound")
    if args.bound < 0:
        raise UsageError("--bound must be >= 0")
    roots = affine_positive_real_roots(label, args.bound)
    if args.output == "json":
        emit_json({
            "label": str(label),
            "affine": True,
            "bound": args.bound,
            "delta": list(imaginary_root(label)),
            "roots": [
                {"vector": list(r.vector), "m": r.m, "beta": list(r.beta[1:]), "sign": r.sign}
                for r in roots
            ],
        })
    else:
        emit("\n".join(_vec(r.vector) for r in roots) if roots else "")
    return 0


def cmd_quiver(args) -> int:
    if args.output == "factors":
        raise UsageError("--output factors only applies to partition")
    quiver = mckay_quiver(args.label, framed=args.framed)
    terms = superpotential(quiver)
    if args.output == "json":
        data = quiver.to_dict()
        data["superpotential"] = [{"sign": t.sign, "path": list(t.path)} for t in terms]
        emit_json(data)
    else:
        lines = [quiver.to_plain(), "W:"] + [t.written() for t in terms]
        emit("\n".join(lines))
    return 0


def cmd_walls(args) -> int:
    if args.output == "factors":
        raise UsageError("--output factors only applies to partition")
    if args.bound < 0:
        raise UsageError("--bound must be >= 0")
    label = args.label
    if (args.start is None) != (args.end is None):
        raise UsageError("--from and --to go together")
    if args.start is None:
        found = [(w, None) for w in walls(label, args.bound)]
    else:
        for name, z in (("--from", args.start), ("--to", args.end)):
            if len(z) != label.num_irreps:
                raise UsageError(f"{name} needs {label.num_irreps} entries for {label}")
        found = crossed_walls(label, args.start, args.end, args.bound)
    if args.output == "json":
        rows = []
        for wall, direction in found:
            row = {
                "normal": list(wall.normal),
                "imaginary": wall.imaginary,
                "roots": [list(r if wall.imaginary else r.vector) for r in wall.roots],
            }
            if direction is not None:
                row["direction"] = direction
            rows.append(row)
        emit_json({"label": str(label), "bound": args.bound, "walls": rows})
    else:
        lines = []
        for wall, direction in found:
            kind = "imaginary" if wall.imaginary else "real"
            text = f"{_vec(wall.normal)} {kind}"
            if direction is not None:
                text += " enter" if direction > 0 else " leave"
            lines.append(text)
        emit("\n".join(lines))
    return 0


def _factor_lines(result) -> list[str]:
    label = result.label
    if result.kind == "GW":
        names = gw_context(label, result.order).var_names
        return [f.render(names) for f in result.factors]
    names = q_context(label, result.order).var_names
    lines = []
    if result.macmahon:
        lines.append(f"M(-q^delta)^{label.num_irreps}  delta={_vec(imaginary_root(label))}")
    for f in result.factors:
        if f.power == 0:
            continue
        m = f.exponent[0]
        lines.append(f"m={m}  {render_family_factor(label, f)}  = {f.render(names)}")
    return lines


def cmd_partition(args) -> int:
    config = RunConfig(
        args.label, args.order, args.kind, args.zeta, args.output, resolve_cache_dir(args)
    )
    if config.output == "factors":
        result = partition_function(config.label, config.kind, config.order, config.zeta, expand=False)
        emit("\n".join(_factor_lines(result)))
        return 0

    cached = cache_load(config)
    if cached is not None:
        series = MultiSeries.from_dict(cached["series"])
        assumed = bool(cached["assumed_dt_pt"])
        status = "hit"
    else:
        result = partition_function(config.label, config.kind, config.order, config.zeta)
        series, assumed = result.series, result.assumed_dt_pt
        cache_store(config, series, assumed)
        status = "miss" if config.cache_dir else "disabled"
    print(f"cache: {status}", file=sys.stderr)

    meta = {
        "label": str(config.label),
        "kind": config.kind,
        "order": config.order,
        "zeta": None if config.zeta is None else [str(v) for v in config.zeta],
        "assumed_dt_pt": assumed,
        "timestamp": _timestamp(),
    }
    if config.output == "json":
        emit_json({**meta, "series": series.to_dict()})
    else:
        head = " ".join(f"{k}={v}" for k, v in meta.items() if v is not None)
        emit(f"# {head}\n" + plain_series(series))
    return 0


def cmd_check(args) -> int:
    if args.output == "factors":
        raise UsageError("--output factors only applies to partition")
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    if args.which == "d5":
        report = verify_d5_example(args.order)
        if args.output == "json":
            emit_json(report.to_dict())
        else:
            emit(report.summary())
        return 0 if report.passed else 1
    if args.label is None:
        raise UsageError(f"check --which {args.which} needs --label")
    if args.which == "bps":
        table, report = check_bps(args.label, args.order)
        if args.output == "json":
            emit_json({**report.to_dict(), "table": table.to_dict()})
        else:
            lines = [
                f"n_0{_vec(beta)} = {value}"
                for (_, beta), value in sorted(table.nonzero().items(), key=lambda kv: (sum(kv[0][1]), kv[0][1]))
            ]
            lines.append(f"residual zero: {table.residual_zero}")
            lines.append(report.summary())
            emit("\n".join(lines))
        return 0 if report.passed else 1
    check = check_gw_pt if args.which == "gw-pt" else check_crepant
    report = check(args.label, args.order)
    if args.output == "json":
        emit_json(report.to_dict())
    else:
        emit(report.summary())
    return 0 if report.passed else 1


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=OUTPUTS, default="plain")
    common.add_argument("--cache-dir", default=None, help="defaults to $MCKAY_CACHE_DIR")
    common.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(
        prog="mckay",
        description="Root systems, wall-crossing and partition functions for C^3/G, G in SU(2).",
        epilog="Negative zeta values need the = form, e.g. --zeta=-1,-2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="list positive roots")
    p.add_argument("label", type=parse_label)
    p.add_argument("--affine", action="store_true", help="affine real roots up to --bound")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("quiver", parents=[common], help="McKay quiver and superpotential")
    p.add_argument("label", type=parse_label)
    p.add_argument("--framed", action="store_true")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("walls", parents=[common], help="walls up to a degree bound")
    p.add_argument("label", type=parse_label)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--from", dest="start", type=parse_zeta, default=None)
    p.add_argument("--to", dest="end", type=parse_zeta, default=None)
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("partition", parents=[common], help="expand a partition function")
    p.add_argument("--label", type=parse_label, required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--zeta", type=parse_zeta, default=None)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("check", parents=[common], help="run an identity check")
    p.add_argument("--label", type=parse_label, default=None)
    p.add_argument("--which", choices=CHECKS, required=True)
    p.add_argument("--order", type=int, default=8)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    except NonGenericError as exc:
        root = f" root {_vec(exc.root)}" if exc.root is not None else ""
        parser.exit(2, f"{parser.prog} {args.command}: error: not generic:{root}: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
