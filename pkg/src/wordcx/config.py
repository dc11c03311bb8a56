"""Experiment configuration: flat ``key=value`` files plus overrides."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigurationError
from .schedule import DEFAULT_CAP, GapConstruction, build_schedule
from .words import (
    EventuallyPeriodicGenerator,
    PeriodicGenerator,
    SturmianGenerator,
    parse_alpha,
)

GENERATOR_KINDS = ("periodic", "eventually-periodic", "sturmian", "gap-construction", "explicit-window")


def parse_config_text(text):
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def generator_from_config(cfg):
    """Build a generator from a mapping such as the ``to_config()`` output."""
    kind = cfg.get("kind") or cfg.get("generator")
    if kind == "periodic":
        return PeriodicGenerator(str(cfg["period"]))
    if kind == "eventually-periodic":
        return EventuallyPeriodicGenerator(
            str(cfg["left_period"]), str(cfg.get("core", "")), str(cfg["right_period"])
        )
    if kind == "sturmian":
        return SturmianGenerator(parse_alpha(cfg.get("alpha", "golden")), Fraction(str(cfg.get("beta", "0"))))
    if kind == "gap-construction":
        sched = build_schedule(
            cfg.get("f", "floor-log2"),
            int(cfg.get("K", 5)),
            int(cfg.get("n0", 1)),
            cap=int(cfg.get("cap", DEFAULT_CAP)),
        )
        clip = cfg.get("clip")
        return GapConstruction(sched, None if clip in (None, "", "none", "None") else int(clip))
    if kind == "explicit-window":
        raise ConfigurationError("an explicit window cannot be regenerated from its config")
    raise ConfigurationError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")


@dataclass
class ExperimentConfig:
    generator: dict = field(default_factory=dict)
    horizon: int = 100
    length: int | None = None
    start: int | None = None
    gate_doubling: bool = True
    out: str = "out"
    seed: int = 0
    window_budget: int = 10**7
    extra: dict = field(default_factory=dict)

    GEN_KEYS = ("generator", "period", "left_period", "core", "right_period", "alpha", "beta", "f", "K", "n0", "cap", "clip")

    @classmethod
    def from_mapping(cls, values):
        values = dict(values)
        gen = {k: values.pop(k) for k in cls.GEN_KEYS if k in values}
        if "generator" in gen:
            gen["kind"] = gen.pop("generator")
        kw = {}
        for key, conv in (("horizon", int), ("length", int), ("start", int), ("seed", int), ("window_budget", int)):
            if key in values:
                kw[key] = conv(values.pop(key))
        if "gate_doubling" in values:
            kw["gate_doubling"] = parse_switch(values.pop("gate_doubling"))
        if "out" in values:
            kw["out"] = str(values.pop("out"))
        cfg = cls(generator=gen, extra=values, **kw)
        cfg.validate()
        return cfg

    def validate(self):
        kind = self.generator.get("kind")
        if kind is not None and kind not in GENERATOR_KINDS:
            raise ConfigurationError(f"unknown generator kind {kind!r}")
        if self.horizon < 0:
            raise ConfigurationError("horizon must be >= 0")
        if self.horizon > self.window_budget:
            raise ConfigurationError(f"horizon {self.horizon} exceeds window budget {self.window_budget}")
        if self.length is not None and self.length > self.window_budget:
            raise ConfigurationError(f"length {self.length} exceeds window budget {self.window_budget}")

    def build_generator(self):
        if not self.generator.get("kind"):
            raise ConfigurationError("no generator configured")
        gen_cfg = dict(self.generator)
        if gen_cfg["kind"] == "gap-construction" and "clip" not in gen_cfg:
            gen_cfg["clip"] = self.horizon + 2
        return generator_from_config(gen_cfg)


def parse_switch(value):
    text = str(value).strip().lower()
    if text in ("on", "true", "1", "yes"):
        return True
    if text in ("off", "false", "0", "no"):
        return False
    raise ConfigurationError(f"expected on/off, got {value!r}")
