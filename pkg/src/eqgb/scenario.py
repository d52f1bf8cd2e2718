"""Scenario configuration and the run pipeline.

``run(config)`` goes seeds -> Buchberger -> interreduce -> summarize ->
verification, writing everything under ``config.output_dir``:

    basis.txt         interreduced basis (PolyText)
    summary.txt       table grouped by largest index
    summary.json      the same, machine readable
    report.json       stats, verification results, exit code
    checkpoint.json   latest checkpoint (kept when the run stops early)
    run.log           progress log
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import asdict, dataclass, field as dc_field, fields
from pathlib import Path

from . import twofactor
from .engine import (
    EQUIVARIANT,
    ORDINARY,
    Limits,
    buchberger,
    check_criterion,
    interreduce,
    leading_ideal,
    truncate_basis,
)
from .field import Field
from .monoid import MonoidKind
from .poly import TermOrder
from .storage import checkpoint_load, checkpoint_save, load_basis, save_basis

log = logging.getLogger(__name__)

SCENARIOS = ("two-factor", "generic-rank-k", "custom-seed-file")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_LIMIT = 3
EXIT_VERIFY = 4
EXIT_IO = 5

ENV_OUTPUT_DIR = "EQGB_OUTPUT_DIR"
ENV_THREADS = "EQGB_THREADS"

# order and monoid each built-in scenario runs under
_FIXED = {
    "two-factor": (TermOrder.TWO_FACTOR, MonoidKind.DIAGONAL),
    "generic-rank-k": (TermOrder.GEN_MATRIX, MonoidKind.PRODUCT),
}


class ConfigError(ValueError):
    pass


@dataclass
class ScenarioConfig:
    scenario: str = "two-factor"
    field: str = "GF(2)"
    order: str | None = None
    monoid: str | None = None
    mode: str = EQUIVARIANT
    rank: int = 1
    seed_file: str | None = None
    max_pairs: int | None = None
    max_degree: int | None = None
    max_largest_index: int | None = None
    checkpoint_every: int = 10_000
    log_every: int = 1000
    threads: int = 1
    deterministic: bool = True
    output_dir: str = "eqgb-out"
    resume: str | None = None
    verify_criterion: bool = True
    verify_parameterization: bool = True
    truncation_checks: list = dc_field(default_factory=list)

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        try:
            Field.parse(self.field)
        except ArithmeticError as e:
            raise ConfigError(str(e)) from None
        if self.mode not in (EQUIVARIANT, ORDINARY):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.scenario in _FIXED:
            order, kind = _FIXED[self.scenario]
            if self.order not in (None, order.value):
                raise ConfigError(f"scenario {self.scenario} runs under the {order.value} order")
            if self.monoid not in (None, kind.value):
                raise ConfigError(f"scenario {self.scenario} runs under the {kind.value} monoid")
        elif self.seed_file is None:
            raise ConfigError("custom-seed-file needs seed_file")
        for name in ("order", "monoid"):
            val = getattr(self, name)
            cls = TermOrder if name == "order" else MonoidKind
            if val is not None and val not in {m.value for m in cls}:
                raise ConfigError(f"unknown {name} {val!r}")
        if self.rank < 1:
            raise ConfigError("rank must be at least 1")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        if self.deterministic:
            self.threads = 1
        self.truncation_checks = [int(n) for n in self.truncation_checks]

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        known = {f.name for f in fields(cls)}
        d = {k.replace("-", "_"): v for k, v in d.items()}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
        return cls(**d)

    @classmethod
    def from_file(cls, path) -> "ScenarioConfig":
        try:
            d = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: {e}") from None
        return cls.from_dict(d)

    def with_env(self, environ=None) -> "ScenarioConfig":
        """Apply ``EQGB_OUTPUT_DIR`` / ``EQGB_THREADS`` overrides."""
        env = os.environ if environ is None else environ
        if env.get(ENV_OUTPUT_DIR):
            self.output_dir = env[ENV_OUTPUT_DIR]
        if env.get(ENV_THREADS):
            try:
                self.threads = int(env[ENV_THREADS])
            except ValueError:
                raise ConfigError(f"{ENV_THREADS} must be an integer") from None
        self.validate()
        return self

    def limits(self) -> Limits:
        return Limits(
            max_pairs=self.max_pairs,
            max_degree=self.max_degree,
            max_largest_index=self.max_largest_index,
            checkpoint_every=self.checkpoint_every,
            log_every=self.log_every,
        )

    def ring(self):
        """``(field, order, monoid kind)`` of the run."""
        f = Field.parse(self.field)
        if self.scenario in _FIXED:
            order, kind = _FIXED[self.scenario]
        else:
            order = TermOrder(self.order) if self.order else None
            kind = MonoidKind(self.monoid) if self.monoid else None
        return f, order, kind


@dataclass
class RunReport:
    exit_code: int = EXIT_OK
    status: str = "ok"
    complete: bool = False
    elements: int = 0
    seed_elements: int = 0
    criterion_satisfied_by_seed: bool = False
    stats: dict = dc_field(default_factory=dict)
    summary: dict = dc_field(default_factory=dict)
    verification: dict = dc_field(default_factory=dict)
    seconds: float = 0.0
    messages: list = dc_field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def build_seeds(cfg: ScenarioConfig):
    """Seed polynomials plus the resolved ``(field, order, kind)``."""
    field, order, kind = cfg.ring()
    if cfg.scenario == "two-factor":
        seeds = interreduce(twofactor.seed_minors(field))
    elif cfg.scenario == "generic-rank-k":
        seeds = [twofactor.generic_minor(cfg.rank, field)]
    else:
        bf = load_basis(cfg.seed_file, field=field, order=order, kind=kind)
        order = bf.order
        kind = bf.kind if cfg.monoid is None else kind
        seeds = bf.polys
    if kind is None and cfg.mode == EQUIVARIANT:
        kind = MonoidKind.DIAGONAL
    return seeds, field, order, kind


def _verify(cfg, basis, field, order, kind, report: RunReport) -> bool:
    ok = True
    ver = report.verification
    if cfg.verify_criterion:
        t = time.time()
        rep = check_criterion(basis, cfg.mode, kind)
        ver["criterion"] = {
            "passed": rep.passed,
            "base_pairs": rep.base_pairs,
            "spolys_checked": rep.spolys_checked,
            "coprime_skips": rep.coprime_skips,
            "chain_skips": rep.chain_skips,
            "seconds": round(time.time() - t, 3),
        }
        log.info("criterion %s (%d S-polynomials)", "passed" if rep else "FAILED", rep.spolys_checked)
        ok &= rep.passed
    if cfg.verify_parameterization and cfg.scenario == "two-factor":
        bad = [i for i, f in enumerate(basis) if twofactor.substitute_parameterization(f)]
        note = "direct" if field.is_rational else "integer lift of the coefficients"
        ver["parameterization"] = {"passed": not bad, "nonvanishing": bad, "lift": note}
        log.info("parameterization: %d of %d elements vanish", len(basis) - len(bad), len(basis))
        # over F_p a lifted element need not vanish, so only a Q run can fail here
        if field.is_rational:
            ok &= not bad
    for n in cfg.truncation_checks:
        if order is not TermOrder.TWO_FACTOR:
            report.messages.append("truncation checks need the two-factor scenario; skipped")
            break
        t = time.time()
        trunc = leading_ideal(truncate_basis(basis, n, kind))
        oracle = buchberger(twofactor.all_minors(n, field), mode=ORDINARY, order=order, field=field)
        ref = leading_ideal(oracle.elements)
        same = trunc == ref
        ver[f"truncation_{n}"] = {
            "passed": same,
            "generators": len(trunc),
            "oracle_generators": len(ref),
            "seconds": round(time.time() - t, 3),
        }
        log.info("truncation at n=%d: %s", n, "equal" if same else "DIFFERENT")
        ok &= same
    return ok


def run(cfg: ScenarioConfig) -> RunReport:
    """Execute a scenario; never raises for I/O problems, see ``exit_code``."""
    t0 = time.time()
    report = RunReport()
    out = Path(cfg.output_dir)
    handler = None
    try:
        out.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(out / "run.log", mode="a")
        handler.setFormatter(logging.Formatter("%(asctime)s %(name)s %(levelname)s %(message)s"))
        pkg_log = logging.getLogger("eqgb")
        pkg_log.addHandler(handler)
        if pkg_log.getEffectiveLevel() > logging.INFO:
            pkg_log.setLevel(logging.INFO)
        if cfg.threads > 1:
            report.messages.append("reduction runs serially; thread count has no effect")
        seeds, field, order, kind = build_seeds(cfg)
        report.seed_elements = len(seeds)
        ck = out / "checkpoint.json"

        def on_checkpoint(st):
            checkpoint_save(st, ck)
            log.info("checkpoint written after %d pairs", st.stats["pairs_processed"])

        if cfg.resume:
            state = buchberger(state=checkpoint_load(cfg.resume), limits=cfg.limits(), on_checkpoint=on_checkpoint)
        else:
            state = buchberger(
                seeds, cfg.mode, kind, cfg.limits(), on_checkpoint=on_checkpoint, order=order, field=field
            )
        report.stats = dict(state.stats)
        report.complete = state.complete
        if not state.complete:
            checkpoint_save(state, ck)
            save_basis(out / "basis.partial.txt", state.elements, field, order, kind, cfg.mode)
            report.exit_code, report.status = EXIT_LIMIT, "limit-exhausted"
            report.elements = len(state.elements)
            report.messages.append(f"stopped early; resume from {ck}")
            return report
        basis = interreduce(state.elements, cfg.mode, kind)
        report.elements = len(basis)
        report.criterion_satisfied_by_seed = state.stats["new_elements"] == len(seeds) and not cfg.resume
        if report.criterion_satisfied_by_seed:
            report.messages.append("criterion satisfied by seed")
        save_basis(out / "basis.txt", basis, field, order, kind, cfg.mode)
        summary = twofactor.summarize(basis)
        report.summary = summary.as_dict()
        (out / "summary.txt").write_text(summary.table() + "\n")
        (out / "summary.json").write_text(json.dumps(report.summary, indent=2, sort_keys=True) + "\n")
        if not _verify(cfg, basis, field, order, kind, report):
            report.exit_code, report.status = EXIT_VERIFY, "verification-failed"
        return report
    except OSError as e:
        report.exit_code, report.status = EXIT_IO, "io-error"
        report.messages.append(str(e))
        return report
    finally:
        report.seconds = round(time.time() - t0, 3)
        if handler is not None:
            logging.getLogger("eqgb").removeHandler(handler)
            handler.close()
        try:
            (out / "report.json").write_text(json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n")
        except OSError:
            pass
