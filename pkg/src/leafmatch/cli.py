"""Command-line workbench: match, sweep, snap, optimize, leaf, link, skin, serve.

Values take unit suffixes (915MHz, 6.8nH, 1.2pF, 50ohm); impedance
literals use complex syntax (25-10j). Exit codes: 0 success, 2 bad
input/usage, 3 computation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import discrete, ladder, leafgeom, linksim, synth, units
from .rfcore import (
    COPPER,
    Frequency,
    Impedance,
    MaterialSpec,
    ReferenceImpedance,
    skin_depth,
)
from .touchstone import TouchstoneError, parse_touchstone

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3


class InputError(Exception):
    """Bad user input: maps to exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--z0", default="50ohm", help="reference impedance (default 50ohm)")
    common.add_argument("--f0", default="915MHz", help="design frequency (default 915MHz)")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    common.add_argument("--seed", type=int, default=0, help="seed for Monte-Carlo runs")

    parser = argparse.ArgumentParser(
        prog="leafmatch",
        description="RF impedance-matching workbench for lumped antenna front ends",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", parents=[common], help="synthesize L-networks for a load")
    _add_load_flags(p)

    p = sub.add_parser("sweep", parents=[common], help="S11 sweep of a network over a load")
    _add_load_flags(p)
    _add_network_flags(p)
    p.add_argument("--from", dest="f_from", default="700MHz")
    p.add_argument("--to", dest="f_to", default="1100MHz")
    p.add_argument("--points", type=int, default=201)

    p = sub.add_parser("snap", parents=[common], help="snap network values to an E-series")
    _add_network_flags(p)
    p.add_argument("--series", default="E24", choices=sorted(discrete.SERIES_TABLES))

    p = sub.add_parser(
        "optimize", parents=[common], help="exhaustive E-series neighborhood search"
    )
    _add_load_flags(p)
    _add_network_flags(p)
    p.add_argument("--series", default="E24", choices=sorted(discrete.SERIES_TABLES))
    p.add_argument("--k", type=int, default=1, help="catalog steps either side")
    p.add_argument("--top", type=int, default=5, help="runner-ups to report")
    p.add_argument("--tolerance", type=float, help="component tolerance percent for Monte-Carlo")
    p.add_argument("--samples", type=int, default=256, help="Monte-Carlo sample count")

    p = sub.add_parser("leaf", parents=[common], help="build the leaf radiator outline")
    p.add_argument("--profile", help="leaf profile JSON file (omit for the default profile)")
    p.add_argument("--dxf", help="write the outline pair to this DXF file")

    p = sub.add_parser("link", parents=[common], help="charging time vs distance sweep")
    p.add_argument("--budget", help="link budget JSON file")
    p.add_argument("--tx-power", default="1W")
    p.add_argument("--tx-gain-dbi", type=float, default=0.0)
    p.add_argument("--rx-gain-dbi", type=float, default=0.0)
    p.add_argument("--efficiency", type=float, default=0.5)
    p.add_argument("--capacitance", default="100uF")
    p.add_argument("--threshold", default="4V")
    p.add_argument("--from", dest="d_from", default="0.5m")
    p.add_argument("--to", dest="d_to", default="2.0m")
    p.add_argument("--step", default="0.25m")

    p = sub.add_parser("skin", parents=[common], help="conductor skin depth")
    p.add_argument("--material", default="copper", help="'copper' or 'custom'")
    p.add_argument("--resistivity", type=float, help="ohm*m, for --material custom")
    p.add_argument("--mu-r", type=float, default=1.0, help="relative permeability")
    p.add_argument("--freq", help="frequency (defaults to --f0)")

    p = sub.add_parser("serve", parents=[common], help="run the interactive session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8111)
    p.add_argument("--persist", help="append-only JSONL journal for crash recovery")

    return parser


def _add_load_flags(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--load", help="impedance literal, e.g. 25-10j")
    g.add_argument("--s1p", help="one-port Touchstone file")
    g.add_argument(
        "--resonator",
        nargs="?",
        const="fixture",
        help="series RLC 'R,L,C' (e.g. 15ohm,18nH,1.2pF) or bare for the fixture",
    )


def _add_network_flags(p: argparse.ArgumentParser):
    p.add_argument("--network", help="network JSON file")
    p.add_argument(
        "--elem",
        action="append",
        default=[],
        metavar="PLACEMENT:KIND:VALUE[:Q]",
        help="inline element, e.g. series:L:6.8nH (repeatable, load side first)",
    )


def _parse_load(args) -> ladder.LoadProfile:
    if getattr(args, "s1p", None):
        try:
            with open(args.s1p, encoding="utf-8") as fh:
                return ladder.MeasuredLoad(parse_touchstone(fh.read()))
        except OSError as exc:
            raise InputError(f"cannot read {args.s1p}: {exc}") from exc
        except TouchstoneError as exc:
            raise InputError(f"{args.s1p}: {exc}") from exc
    if getattr(args, "resonator", None):
        if args.resonator == "fixture":
            return ladder.RESONATOR_FIXTURE
        try:
            r_text, l_text, c_text = args.resonator.split(",")
            return ladder.ResonatorLoad(
                units.parse_quantity(r_text, "ohm"),
                units.parse_quantity(l_text, "H"),
                units.parse_quantity(c_text, "F"),
            )
        except (ValueError, units.QuantityError) as exc:
            raise InputError(f"bad --resonator value: {exc}") from exc
    if getattr(args, "load", None):
        z = units.parse_complex_ohms(args.load)
        return ladder.ConstantLoad(Impedance(z.real, z.imag))
    raise InputError("specify a load with --load, --s1p, or --resonator")


def _parse_network(args) -> ladder.MatchingNetwork:
    if args.network:
        try:
            with open(args.network, encoding="utf-8") as fh:
                return ladder.network_from_json(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {args.network}: {exc}") from exc
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise InputError(f"bad network JSON: {exc}") from exc
    if not args.elem:
        raise InputError("specify a network with --network or --elem")
    kinds = {"L": (ladder.INDUCTOR, "H"), "C": (ladder.CAPACITOR, "F"), "R": (ladder.RESISTOR, "ohm")}
    elements = []
    for text in args.elem:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise InputError(f"bad --elem {text!r}; expected placement:kind:value[:Q]")
        placement, kind_letter, value_text = parts[0].lower(), parts[1].upper(), parts[2]
        if placement not in ladder.PLACEMENTS:
            raise InputError(f"bad placement {parts[0]!r} in --elem {text!r}")
        if kind_letter not in kinds:
            raise InputError(f"bad kind {parts[1]!r} in --elem {text!r}")
        kind, unit = kinds[kind_letter]
        q = float(parts[3]) if len(parts) == 4 else None
        try:
            elements.append(ladder.LadderElement(kind, placement, units.parse_quantity(value_text, unit), q))
        except (ValueError, units.QuantityError) as exc:
            raise InputError(f"bad --elem {text!r}: {exc}") from exc
    return ladder.MatchingNetwork(tuple(elements))


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _element_text(e: ladder.LadderElement) -> str:
    unit = {"inductor": "H", "capacitor": "F", "resistor": "ohm"}[e.kind]
    q = f" Q={e.quality_factor:g}" if e.quality_factor else ""
    return f"{e.placement} {e.kind} {units.format_si(e.value, unit)}{q}"


def cmd_match(args, z0: ReferenceImpedance, f0: Frequency) -> str:
    load = _parse_load(args)
    solutions = synth.match_and_verify(load, z0, f0)
    if args.format == "json":
        return json.dumps([synth.solution_to_dict(s) for s in solutions], indent=2)
    lines = [f"{len(solutions)} matching solution(s) at {units.format_si(f0.hertz, 'Hz')}:"]
    for i, s in enumerate(solutions, 1):
        parts = ", ".join(_element_text(e) for e in s.network.elements) or "no elements needed"
        lines.append(f"  {i}. [{s.topology_label}] {parts}  ->  S11 {s.achieved_s11_db:.1f} dB")
    return "\n".join(lines)


def cmd_sweep(args, z0: ReferenceImpedance, f0: Frequency) -> str:
    load = _parse_load(args)
    network = _parse_network(args) if (args.network or args.elem) else ladder.MatchingNetwork()
    result = ladder.sweep_s11(
        network,
        load,
        z0,
        Frequency(units.parse_frequency_hz(args.f_from)),
        Frequency(units.parse_frequency_hz(args.f_to)),
        args.points,
    )
    f_dip, s11_dip = ladder.find_dip(result)
    if args.format == "json":
        doc = ladder.sweep_to_dict(result)
        doc["dip"] = {"frequency_hz": f_dip.hertz, "s11_db": s11_dip}
        return json.dumps(doc, indent=2)
    if args.format == "csv":
        lines = ["frequency_hz,gamma_real,gamma_imag,s11_db"]
        for pt in result.points:
            lines.append(
                f"{pt.frequency.hertz!r},{pt.gamma.real!r},{pt.gamma.imag!r},{pt.s11_db!r}"
            )
        return "\n".join(lines) + "\n"
    return (
        f"{len(result.points)} points, "
        f"dip {s11_dip:.2f} dB at {units.format_si(f_dip.hertz, 'Hz')}"
    )


def cmd_snap(args, z0: ReferenceImpedance, f0: Frequency) -> str:
    network = _parse_network(args)
    snapped = ladder.MatchingNetwork(
        tuple(
            ladder.LadderElement(e.kind, e.placement, discrete.snap(e.value, args.series).value, e.quality_factor)
            for e in network.elements
        )
    )
    if args.format == "json":
        return json.dumps(ladder.network_to_dict(snapped), indent=2)
    lines = [f"snapped to {args.series}:"]
    for before, after in zip(network.elements, snapped.elements):
        unit = {"inductor": "H", "capacitor": "F", "resistor": "ohm"}[before.kind]
        lines.append(
            f"  {before.placement} {before.kind}: "
            f"{units.format_si(before.value, unit)} -> {units.format_si(after.value, unit)}"
        )
    return "\n".join(lines)


def cmd_optimize(args, z0: ReferenceImpedance, f0: Frequency) -> str:
    load = _parse_load(args)
    network = _parse_network(args)
    report = discrete.optimize_discrete(
        network,
        load,
        z0,
        f0,
        args.series,
        args.k,
        top_k=args.top,
        tolerance_pct=args.tolerance,
        n_tolerance_samples=args.samples,
        seed=args.seed,
    )
    if args.format == "json":
        return json.dumps(discrete.report_to_dict(report), indent=2)
    lines = [
        f"evaluated {report.candidates_evaluated} candidate(s) in {args.series}, k={args.k}",
        f"best S11 at {units.format_si(f0.hertz, 'Hz')}: {report.best_s11_db:.2f} dB",
    ]
    for e in report.best_network.elements:
        lines.append(f"  {_element_text(e)}")
    if report.runner_ups:
        lines.append("runner-ups:")
        for n, s in report.runner_ups:
            parts = ", ".join(_element_text(e) for e in n.elements)
            lines.append(f"  {s:.2f} dB: {parts}")
    if report.tolerance_worst_s11_db is not None:
        lines.append(
            f"tolerance +/-{args.tolerance}%: worst {report.tolerance_worst_s11_db:.2f} dB, "
            f"p95 {report.tolerance_p95_s11_db:.2f} dB"
        )
    return "\n".join(lines)


def cmd_leaf(args, z0: ReferenceImpedance, f0: Frequency) -> str:
    if args.profile:
        try:
            with open(args.profile, encoding="utf-8") as fh:
                profile = leafgeom.profile_from_dict(json.load(fh))
        except OSError as exc:
            raise InputError(f"cannot read {args.profile}: {exc}") from exc
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad profile JSON: {exc}") from exc
    else:
        profile = leafgeom.DEFAULT_PROFILE
    pair = leafgeom.build_leaf_pair(profile)
    area, perimeter, (w, h) = leafgeom.outline_metrics(pair)
    if args.dxf:
        with open(args.dxf, "w", encoding="utf-8", newline="") as fh:
            fh.write(leafgeom.export_dxf(pair))
    metrics = {
        "area_mm2": area,
        "perimeter_mm": perimeter,
        "bbox_mm": [w, h],
        "elements": 2 if pair.element_b else 1,
    }
    if args.format == "json":
        return json.dumps(metrics, indent=2)
    return (
        f"area {area:.2f} mm^2, perimeter {perimeter:.2f} mm, "
        f"bbox {w:.2f} x {h:.2f} mm"
        + (f", DXF written to {args.dxf}" if args.dxf else "")
    )


def cmd_link(args, z0: ReferenceImpedance, f0: Frequency) -> str:
    if args.budget:
        try:
            with open(args.budget, encoding="utf-8") as fh:
                doc = json.load(fh)
            budget = linksim.budget_from_dict(doc)
            tank = linksim.tank_from_dict(doc)
        except OSError as exc:
            raise InputError(f"cannot read {args.budget}: {exc}") from exc
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad budget JSON: {exc}") from exc
    else:
        budget = linksim.LinkBudget(
            tx_power=units.parse_quantity(args.tx_power, "W"),
            tx_gain_dbi=args.tx_gain_dbi,
            rx_gain_dbi=args.rx_gain_dbi,
            frequency=f0,
            rectifier_efficiency=args.efficiency,
        )
        tank = linksim.ChargeTank(
            capacitance=units.parse_quantity(args.capacitance, "F"),
            threshold_volts=units.parse_quantity(args.threshold, "V"),
        )
    result = linksim.distance_sweep(
        budget,
        tank,
        units.parse_quantity(args.d_from, "m"),
        units.parse_quantity(args.d_to, "m"),
        units.parse_quantity(args.step, "m"),
    )
    if args.format == "json":
        return json.dumps(linksim.sweep_to_dict(result), indent=2)
    return linksim.sweep_to_csv(result)


def cmd_skin(args, z0: ReferenceImpedance, f0: Frequency) -> str:
    if args.material == "copper":
        material = COPPER
    elif args.material == "custom":
        if args.resistivity is None:
            raise InputError("--material custom needs --resistivity")
        material = MaterialSpec(args.resistivity, args.mu_r)
    else:
        raise InputError(f"unknown material {args.material!r}")
    freq = Frequency(units.parse_frequency_hz(args.freq)) if args.freq else f0
    depth = skin_depth(material, freq)
    if args.format == "json":
        return json.dumps({"frequency_hz": freq.hertz, "skin_depth_m": depth})
    return f"skin depth at {units.format_si(freq.hertz, 'Hz')}: {depth * 1e6:.4f} um"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        z0 = ReferenceImpedance(units.parse_quantity(args.z0, "ohm"))
        f0 = Frequency(units.parse_frequency_hz(args.f0))
    except (units.QuantityError, ValueError) as exc:
        parser.exit(EXIT_INPUT, f"error: {exc}\n")

    if args.command == "serve":
        from .serve import run

        run(host=args.host, port=args.port, persist_path=args.persist)
        return EXIT_OK

    handlers = {
        "match": cmd_match,
        "sweep": cmd_sweep,
        "snap": cmd_snap,
        "optimize": cmd_optimize,
        "leaf": cmd_leaf,
        "link": cmd_link,
        "skin": cmd_skin,
    }
    try:
        output = handlers[args.command](args, z0, f0)
    except (InputError, units.QuantityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    _emit(args, output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
