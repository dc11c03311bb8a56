"""``wordcx`` command line: generate | profile | rspecial | reduce | certify | structure | freq.

Settings come from a flat ``key=value`` file (``--config``), then ``--set
KEY=VALUE`` overrides, then the dedicated flags; later sources win.  Every
failure prints one JSON error record on stderr and exits nonzero.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .certificates import anchored_family, extract_rays, ray_families, ray_window
from .codes import PeriodicOrbit, apply_sbc, phi_reduce
from .complexity import ComplexityProfiler, SubwordIndex
from .config import ExperimentConfig, parse_config_text, parse_switch
from .errors import GateError, PreconditionError, WordcxError
from .schedule import GapConstruction, construction_prefix
from .structure import empirical_frequency, structure_check
from .words import Window

EXIT_CODES = {
    "gate": 3,
    "certificate": 4,
    "precondition": 5,
    "io": 6,
}


def _dump(path, payload):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_window(path):
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return Window.from_json(text)
    return Window(text.strip())


def _int_list(text):
    text = str(text).strip()
    if text.startswith("range:"):
        parts = [int(v) for v in text[len("range:"):].split(":")]
        lo, hi = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(lo, hi + 1, step))
    return [int(v) for v in text.split(",") if v.strip()]


def build_config(args):
    values = {}
    if args.config:
        values.update(parse_config_text(Path(args.config).read_text()))
    for item in args.set or ():
        if "=" not in item:
            raise WordcxError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        values[key.strip()] = value.strip()
    if args.out is not None:
        values["out"] = args.out
    if args.horizon is not None:
        values["horizon"] = args.horizon
    if args.gate_doubling is not None:
        values["gate_doubling"] = args.gate_doubling
    if args.seed is not None:
        values["seed"] = args.seed
    if args.window is not None:
        values["window"] = args.window
    return ExperimentConfig.from_mapping(values)


def _input_window(cfg):
    if "window" in cfg.extra:
        return load_window(cfg.extra["window"])
    return _generate(cfg)


def _generate(cfg):
    gen = cfg.build_generator()
    extra = cfg.extra
    if isinstance(gen, GapConstruction) and "num_gaps" in extra:
        left = int(extra["left_zeros"]) if "left_zeros" in extra else None
        return construction_prefix(gen.schedule, int(extra["num_gaps"]), left, gen.clip)
    length = cfg.length if cfg.length is not None else 2 * (cfg.horizon + 1)
    start = cfg.start if cfg.start is not None else 0
    return gen.window(start, start + length - 1)


def cmd_generate(cfg):
    out = Path(cfg.out)
    w = _generate(cfg)
    out.mkdir(parents=True, exist_ok=True)
    (out / "window.txt").write_text(w.content + "\n")
    _dump(out / "window.json", w.to_dict())
    gen = cfg.build_generator()
    if isinstance(gen, GapConstruction):
        _dump(out / "schedule.json", gen.schedule.to_dict())
    print(json.dumps({"window": str(out / "window.json"), "length": len(w)}))
    return 0


def _profiler(cfg):
    est = ComplexityProfiler(horizon=cfg.horizon, gate_doubling=cfg.gate_doubling)
    if "window" in cfg.extra:
        w = load_window(cfg.extra["window"])
        if cfg.horizon > len(w):
            est.set_params(horizon=len(w))
        return est.fit(w)
    return est.fit(cfg.build_generator())


def cmd_profile(cfg):
    est = _profiler(cfg)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "profile.csv", "w", newline="") as fh:
        est.profile_.to_csv(fh)
    if cfg.gate_doubling and not est.stabilization_ok_:
        raise GateError(
            f"doubling gate failed; first unstable n = {est.first_unstable_}",
            first_unstable=est.first_unstable_,
        )
    print(json.dumps({"profile": str(out / "profile.csv"), "N": est.profile_.N}))
    return 0


def cmd_rspecial(cfg):
    if "window" in cfg.extra or cfg.length is not None:
        w = _input_window(cfg)
    else:
        # without an explicit extent, use the window the doubling gate accepted
        est = _profiler(cfg)
        if cfg.gate_doubling and not est.stabilization_ok_:
            raise GateError(
                f"doubling gate failed; first unstable n = {est.first_unstable_}",
                first_unstable=est.first_unstable_,
            )
        w = est.window_
    index = SubwordIndex(w)
    if "n" in cfg.extra:
        lengths = _int_list(cfg.extra["n"])
        reports = [index.right_special(n) for n in lengths]
    else:
        N = min(cfg.horizon, len(w) - 1)
        table = index.right_special_table(N)
        reports = [table[n] for n in range(1, N + 1)]
    out = Path(cfg.out)
    _dump(out / "rspecial.json", [r.to_dict() for r in reports])
    print(json.dumps({"rspecial": str(out / "rspecial.json"), "lengths": len(reports)}))
    return 0


def cmd_reduce(cfg):
    w = _input_window(cfg)
    orbit = PeriodicOrbit.of(cfg.extra.get("orbit", "0"))
    k = int(cfg.extra.get("k", len(orbit) + 1))
    image = apply_sbc(phi_reduce(orbit, k), w)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "reduced.txt").write_text(image.content + "\n")
    _dump(out / "reduced.json", image.to_dict())
    print(json.dumps({"reduced": str(out / "reduced.json"), "length": len(image)}))
    return 0


def cmd_certify(cfg):
    extra = cfg.extra
    variant = extra.get("variant", "anchored")
    lengths = _int_list(extra["n"]) if "n" in extra else [None]
    w = _input_window(cfg) if ("window" in extra or cfg.generator) else None
    out = Path(cfg.out)
    written = []
    for n in lengths:
        if variant == "anchored":
            if w is None or "marker" not in extra or n is None:
                raise PreconditionError("anchored certificates need a window, a marker and n")
            cert = anchored_family(w, extra["marker"], n)
            cert.verify(w)
        else:
            y, z = extra.get("y"), extra.get("z")
            extracted = y is None and w is not None
            if y is None or (z is None and variant in ("inf0run", "lastcase")):
                if w is None:
                    raise PreconditionError(f"{variant} needs explicit rays y/z or a window to extract them from")
                ey, ez = extract_rays(w)
                y = y if y is not None else ey
                z = z if z is not None else ez
            if y is None:
                raise PreconditionError("no right ray could be extracted from the window")
            params = {}
            for key in ("k", "m", "l"):
                if key in extra:
                    params[key] = int(extra[key])
            if "y_alt" in extra:
                params["y_alt"] = extra["y_alt"]
            if variant == "termyz":
                params["window"] = w
                params["marker"] = extra.get("marker")
            cert = ray_families(y, z or "", n, variant, params)
            if extracted and variant != "termyz":
                cert.verify(w)
            else:
                cert.verify(ray_window(y, z or "", cert.n, params.get("y_alt")) if variant != "termyz" else None)
        path = out / f"certificate_{variant}_{cert.n}.json"
        _dump(path, cert.to_dict())
        written.append(str(path))
    print(json.dumps({"certificates": written}))
    return 0


def cmd_structure(cfg):
    w = _input_window(cfg)
    extra = cfg.extra
    orbit = PeriodicOrbit.of(extra.get("orbit", "0"))
    ms = _int_list(extra.get("m", "range:1:%d" % max(1, len(w) // 3)))
    ks = _int_list(extra.get("k", "0"))
    report = {"orbit": orbit.period, "window_length": len(w), "passes": [], "frequency": []}
    symbol = orbit.period if len(orbit) == 1 else None
    for m in ms:
        for k in ks:
            if 3 * m + k > len(w):
                continue
            if not structure_check(w, orbit, m, k).ok:
                continue
            report["passes"].append([m, k])
            if symbol is None:
                continue
            for j in _freq_js(m, extra):
                freq = empirical_frequency(w, symbol * j)
                bound = Fraction(m - j, 3 * m + k)
                report["frequency"].append({
                    "m": m, "k": k, "j": j,
                    "frequency": str(freq), "bound": str(bound), "holds": freq >= bound,
                })
    out = Path(cfg.out)
    _dump(out / "structure.json", report)
    print(json.dumps({"structure": str(out / "structure.json"), "passes": len(report["passes"])}))
    return 0


def _freq_js(m, extra):
    if "j" in extra:
        return [j for j in _int_list(extra["j"]) if 1 <= j <= m]
    return range(1, m + 1)


def cmd_freq(cfg):
    w = _input_window(cfg)
    word = cfg.extra.get("word")
    if not word:
        raise PreconditionError("freq needs word=...")
    q = empirical_frequency(w, word)
    payload = {"word": word, "frequency": str(q), "decimal": f"{float(q):.6f}"}
    out = Path(cfg.out)
    _dump(out / "freq.json", payload)
    print(json.dumps(payload))
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "profile": cmd_profile,
    "rspecial": cmd_rspecial,
    "reduce": cmd_reduce,
    "certify": cmd_certify,
    "structure": cmd_structure,
    "freq": cmd_freq,
}


def make_parser():
    parser = argparse.ArgumentParser(prog="wordcx", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="key=value settings file")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--horizon", type=int, help="largest word length analysed")
    parser.add_argument("--gate-doubling", dest="gate_doubling", type=parse_switch, metavar="on|off")
    parser.add_argument("--seed", type=int, help="seed for randomized runs")
    parser.add_argument("--window", help="input window file (.json record or plain symbols)")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except WordcxError as exc:
        record = {"error": exc.kind, "message": str(exc)}
        if isinstance(exc, GateError) and exc.first_unstable is not None:
            record["first_unstable"] = exc.first_unstable
        print(json.dumps(record), file=sys.stderr)
        return EXIT_CODES.get(exc.kind, 2)
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return EXIT_CODES["io"]
    except (KeyError, ValueError) as exc:
        print(json.dumps({"error": "configuration", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
