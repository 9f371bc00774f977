"""Command-line front end: limit tables, block encoding, verification suites."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__
from .bound_engine import Refinement, upper_limit
from .entropy_model import ComponentKind, crude_bound
from .quantization import pow2_table, scaled_annex_k
from .transform import level_shift
from .verification import (
    SearchConfig,
    adversarial_search,
    encode_block,
    soundness_fuzz,
    toy_oracle,
)

PUBLISHED_SF_SET = ("1/64", "1/16", "1/8", "1/6", "1/4", "1/2", "1")

_COMPONENTS = {
    "lum": (ComponentKind.LUMINANCE,),
    "luminance": (ComponentKind.LUMINANCE,),
    "chroma": (ComponentKind.CHROMINANCE,),
    "chrominance": (ComponentKind.CHROMINANCE,),
    "both": (ComponentKind.LUMINANCE, ComponentKind.CHROMINANCE),
}

_REFINEMENTS = {
    "base": Refinement.BASE,
    "capacity": Refinement.CAPACITY,
    "maxconfig": Refinement.MAXCONFIG,
}


class UsageError(SystemExit):
    pass


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    version: str
    timestamp: str | None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "version": self.version,
            "timestamp": self.timestamp,
        }


def _timestamp() -> str | None:
    # only stamped when SOURCE_DATE_EPOCH pins it; keeps outputs byte-stable
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is None:
        return None
    return datetime.fromtimestamp(int(epoch), tz=timezone.utc).isoformat()


def _manifest(command: str, parameters: dict, seed: int | None = None) -> RunManifest:
    return RunManifest(command, parameters, seed, __version__, _timestamp())


def _parse_sf(text: str) -> Fraction:
    try:
        sf = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"error: cannot parse scale factor {text!r}: {exc}")
    if not Fraction(1, 64) <= sf <= 1:
        raise UsageError(f"error: scale factor {text} outside [1/64, 1]")
    return sf


def _seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ACBOUND_SEED")
    return int(env) if env is not None else 0


def _emit(lines: list[str], manifest: RunManifest, comment: str = "#") -> None:
    for line in lines:
        print(line)
    print(f"{comment} manifest: {json.dumps(manifest.to_dict(), sort_keys=True)}")


# -- limits ------------------------------------------------------------------


def cmd_limits(args) -> int:
    if args.sf_set == "paper":
        sf_texts = list(PUBLISHED_SF_SET)
    elif args.sf:
        sf_texts = args.sf
    else:
        sf_texts = list(PUBLISHED_SF_SET)
    sfs = [_parse_sf(t) for t in sf_texts]
    components = _COMPONENTS[args.component]
    manifest = _manifest("limits", {
        "sf": sf_texts, "component": args.component, "refinement": args.refinement,
    })

    rows = []
    for text, sf in zip(sf_texts, sfs):
        row = {"sf": text}
        for comp in components:
            q = scaled_annex_k(comp, sf)
            if args.refinement == "best":
                result = min(
                    (upper_limit(comp, q, r) for r in Refinement),
                    key=lambda res: res.limit,
                )
            else:
                result = upper_limit(comp, q, _REFINEMENTS[args.refinement])
            row[comp.value] = result
        rows.append(row)

    if args.json:
        payload = {
            "manifest": manifest.to_dict(),
            "crude_bound": crude_bound(),
            "limits": [
                {
                    "sf": row["sf"],
                    **{
                        comp.value: row[comp.value].to_json_dict()
                        for comp in components
                    },
                }
                for row in rows
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0

    names = [comp.value for comp in components]
    if args.csv:
        lines = ["sf," + ",".join(names)]
        for row in rows:
            cells = ",".join(str(row[comp.value].limit) for comp in components)
            lines.append(f"{row['sf']},{cells}")
        _emit(lines, manifest)
        return 0

    header = f"{'scale factor':>12s}" + "".join(f"{n:>14s}" for n in names)
    lines = [header]
    for row in rows:
        cells = "".join(f"{row[comp.value].limit:>14d}" for comp in components)
        lines.append(f"{row['sf']:>12s}" + cells)
    _emit(lines, manifest)
    return 0


# -- encode ------------------------------------------------------------------


def _read_block_file(path: str) -> np.ndarray:
    try:
        text = open(path).read()
    except OSError as exc:
        raise UsageError(f"error: cannot read {path}: {exc}")
    rows = []
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 8:
        raise UsageError(f"error: {path}: expected 8 non-empty lines, found {len(lines)}")
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if len(tokens) != 8:
            raise UsageError(
                f"error: {path}:{lineno}: expected 8 values, found {len(tokens)}"
            )
        row = []
        for col, token in enumerate(tokens, start=1):
            try:
                value = int(token)
            except ValueError:
                raise UsageError(
                    f"error: {path}:{lineno}:{col}: not an integer: {token!r}"
                )
            if not 0 <= value <= 255:
                raise UsageError(
                    f"error: {path}:{lineno}:{col}: sample {value} outside 0..255"
                )
            row.append(value)
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def cmd_encode(args) -> int:
    sf = _parse_sf(args.sf)
    component = _COMPONENTS[args.component][0]
    raw = _read_block_file(args.block_file)
    q = scaled_annex_k(component, sf)
    report = encode_block(level_shift(raw), q, component)
    manifest = _manifest("encode", {
        "block_file": args.block_file, "sf": args.sf, "component": args.component,
    })
    if args.json:
        print(json.dumps({"manifest": manifest.to_dict(), "report": report.to_json_dict()},
                         indent=2, sort_keys=True))
        return 0
    lines = [
        f"component:      {component.value}",
        f"scale factor:   {sf}",
        f"ac bits:        {report.ac_bits}",
        f"limit:          {report.limit}",
        f"slack:          {report.slack}",
        f"eob present:    {report.symbols.has_eob}",
        "symbols:        " + " ".join(f"({r},{s})" for r, s in report.symbols.symbols),
    ]
    _emit(lines, manifest)
    return 0


# -- verify ------------------------------------------------------------------


def _check(lines: list[str], name: str, ok: bool, detail: str = "") -> bool:
    mark = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    lines.append(f"{mark} {name}{suffix}")
    return ok


def _checks_as_json(lines: list[str]) -> list[dict]:
    out = []
    for line in lines:
        mark, _, rest = line.partition(" ")
        name, _, detail = rest.partition(" (")
        out.append({
            "name": name,
            "ok": mark == "PASS",
            "detail": detail[:-1] if detail else "",
        })
    return out


def _verify_deltas(args, lines: list[str]) -> bool:
    from .bound_engine import (
        build_sets,
        gain_functions,
        loss_function,
        reference_length,
    )

    sf = _parse_sf(args.sf)
    component = _COMPONENTS[args.component][0]
    q = scaled_annex_k(component, sf)
    ref = reference_length(component, pow2_table(q))
    sets = build_sets(ref, Refinement.BASE)
    result = upper_limit(component, q, Refinement.BASE)
    ok = True
    ok &= _check(lines, "reference length", ref.ref_len == result.ref_len,
                 f"len={ref.ref_len}")
    ok &= _check(lines, "objective zero at the origin",
                 result.objective[(0, 0)] == 0)
    ok &= _check(lines, "limit covers reference", result.limit >= ref.ref_len,
                 f"limit={result.limit}")
    if component is ComponentKind.CHROMINANCE and sf == 1:
        ok &= _check(lines, "losses 2n-1",
                     all(loss_function(sets, n) == 2 * n - 1 for n in range(1, 55)))
        ok &= _check(lines, "size-9 gains 3a",
                     all(gain_functions(sets, a, 0)[0] == 3 * a for a in range(16)))
        ok &= _check(lines, "size-10 gains 6b",
                     all(gain_functions(sets, 0, b)[1] == 6 * b for b in range(4)))
        ok &= _check(lines, "limit 349", result.limit == 349 and result.argmax == (0, 0))
    total = sum(sets.census.values())
    ok &= _check(lines, "evaluated cases 20159", total == 20159, f"total={total}")
    return ok


def _verify_toy(args, lines: list[str]) -> bool:
    exponents = None
    if args.exponents:
        exponents = tuple(int(t) for t in args.exponents.split(","))
    ok = True
    for component in _COMPONENTS[args.component]:
        exact, limit = toy_oracle(args.n, component, exponents)
        gap = limit - exact
        ok &= _check(lines, f"toy n={args.n} {component.value}", limit >= exact,
                     f"exact={exact} limit={limit} gap={gap}")
    return ok


def _verify_fuzz(args, lines: list[str]) -> bool:
    seed = _seed_from(args)
    sf_texts = list(PUBLISHED_SF_SET) if args.sf is None else [args.sf]
    ok = True
    for component in _COMPONENTS[args.component]:
        for text in sf_texts:
            q = scaled_annex_k(component, _parse_sf(text))
            summary = soundness_fuzz(args.trials, q, component, seed)
            ok &= _check(
                lines, f"fuzz {component.value} sf={text}",
                summary["min_slack"] >= 0,
                f"max_bits={summary['max_bits']} min_slack={summary['min_slack']}",
            )
    return ok


def cmd_verify(args) -> int:
    manifest = _manifest("verify", {"suite": args.suite}, seed=getattr(args, "seed", None))
    lines: list[str] = []
    if args.suite == "deltas":
        ok = _verify_deltas(args, lines)
    elif args.suite == "toy":
        ok = _verify_toy(args, lines)
    else:
        ok = _verify_fuzz(args, lines)
    if getattr(args, "json", False):
        print(json.dumps({
            "manifest": manifest.to_dict(),
            "ok": ok,
            "checks": _checks_as_json(lines),
        }, indent=2, sort_keys=True))
    else:
        _emit(lines, manifest)
    return 0 if ok else 1


def cmd_search(args) -> int:
    sf = _parse_sf(args.sf)
    component = _COMPONENTS[args.component][0]
    q = scaled_annex_k(component, sf)
    cfg = SearchConfig(
        component, sf, iterations=args.iterations, restarts=args.restarts,
        seed=_seed_from(args), mutation=args.mutation,
    )
    report = adversarial_search(cfg, q)
    manifest = _manifest("search", {
        "sf": args.sf, "component": args.component,
        "iterations": args.iterations, "restarts": args.restarts,
        "mutation": args.mutation,
    }, seed=cfg.seed)
    if args.json:
        print(json.dumps({"manifest": manifest.to_dict(), "report": report.to_json_dict()},
                         indent=2, sort_keys=True))
        return 0
    gap = (report.limit - report.ac_bits) / report.ac_bits
    lines = [
        f"best ac bits:   {report.ac_bits}",
        f"limit:          {report.limit}",
        f"relative gap:   {gap:.4f}",
        "block:",
    ]
    lines.extend("  " + " ".join(f"{v + 128:3d}" for v in row) for row in report.block)
    _emit(lines, manifest)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acbound",
        description="Worst-case AC code-length limits for JPEG Baseline 8x8 blocks.",
    )
    parser.add_argument("--version", action="version", version=f"acbound {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("limits", help="compute upper limits for scale factors")
    p.add_argument("--sf", action="append", help="scale factor as a fraction, repeatable")
    p.add_argument("--sf-set", choices=["paper"], help="use the published scale-factor set")
    p.add_argument("--component", choices=sorted(_COMPONENTS), default="both")
    p.add_argument("--refinement", choices=["base", "capacity", "maxconfig", "best"],
                   default="best")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("encode", help="encode one 8x8 block from a text file")
    p.add_argument("block_file", help="8 lines of 8 raw samples in 0..255")
    p.add_argument("--sf", required=True)
    p.add_argument("--component", choices=[k for k in _COMPONENTS if k != "both"],
                   default="lum")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("verify", help="run a verification suite")
    vsub = p.add_subparsers(dest="suite", required=True)

    v = vsub.add_parser("deltas", help="check the enumeration against known values")
    v.add_argument("--sf", default="1")
    v.add_argument("--component", choices=[k for k in _COMPONENTS if k != "both"],
                   default="chroma")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    v = vsub.add_parser("toy", help="exhaustive oracle on a small instance")
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--component", choices=sorted(_COMPONENTS), default="both")
    v.add_argument("--exponents", help="comma-separated exponent vector")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    v = vsub.add_parser("fuzz", help="random blocks must stay under the limit")
    v.add_argument("--trials", type=int, default=10_000)
    v.add_argument("--seed", type=int)
    v.add_argument("--sf", help="single scale factor; defaults to the published set")
    v.add_argument("--component", choices=sorted(_COMPONENTS), default="both")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="hill-climb for long-coded blocks")
    p.add_argument("--sf", required=True)
    p.add_argument("--component", choices=[k for k in _COMPONENTS if k != "both"],
                   default="lum")
    p.add_argument("--iterations", type=int, default=2000)
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--mutation", choices=["single_pixel", "pixel_pair"],
                   default="pixel_pair")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
