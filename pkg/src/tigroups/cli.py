"""Command-line interface: ``tigroups verify | explain | list-corpus``."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import click

from .corpus import default_corpus
from .errors import GroupParseError, LatticeTooLarge
from .group import GroupTable, is_prime, prime_divisors
from .structure import frobenius_decomposition
from .subgroups import LATTICE_MAX_ORDER, all_subgroups
from .theorems import (
    BICONDITIONALS,
    EQUIVALENCES,
    LHS_FILTER,
    RHS_CASES,
    THEOREMS,
    SubgroupFilter,
    TheoremReport,
    lhs_condition,
    rhs_checks,
    subgroup_profiles,
    verify,
)

CONFIG_ENV = "TIGROUPS_CONFIG"
CSV_COLUMNS = ("group", "order", "prime", "theorem", "lhs", "rhs_case", "holds", "witness")
FORMATS = ("json", "csv", "text")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    max_order: int = LATTICE_MAX_ORDER
    theorems: tuple[str, ...] = THEOREMS
    primes: str | int = "all"
    corpus_files: tuple[str, ...] = ()
    output_format: str = "json"
    parallelism: int = 1
    fail_fast: bool = False

    def validate(self) -> RunConfig:
        if not isinstance(self.max_order, int) or not 1 <= self.max_order <= LATTICE_MAX_ORDER:
            raise ConfigError(f"max_order must be between 1 and the lattice cap {LATTICE_MAX_ORDER}")
        unknown = [t for t in self.theorems if t not in THEOREMS]
        if unknown or not self.theorems:
            raise ConfigError(f"unknown theorem ids {unknown}; choose from {', '.join(THEOREMS)}")
        self.theorems = tuple(t for t in THEOREMS if t in self.theorems)
        if self.primes != "all":
            try:
                self.primes = int(self.primes)
            except (TypeError, ValueError):
                raise ConfigError(f"primes must be 'all' or a prime, got {self.primes!r}") from None
            if not is_prime(self.primes):
                raise ConfigError(f"{self.primes} is not prime")
        if self.output_format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if not isinstance(self.parallelism, int) or self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        self.corpus_files = tuple(str(p) for p in self.corpus_files)
        return self


_CONFIG_KEYS = {
    "max_order": "max_order",
    "theorems": "theorems",
    "primes": "primes",
    "corpus": "corpus_files",
    "corpus_files": "corpus_files",
    "format": "output_format",
    "output_format": "output_format",
    "jobs": "parallelism",
    "parallelism": "parallelism",
    "fail_fast": "fail_fast",
}


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    out = {}
    for key, value in data.items():
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if key == "theorems" and isinstance(value, str):
            value = _split_theorems(value)
        if key in ("corpus", "corpus_files") and isinstance(value, str):
            value = [value]
        out[_CONFIG_KEYS[key]] = tuple(value) if isinstance(value, list) else value
    return out


def _split_theorems(text: str) -> tuple[str, ...]:
    return tuple(t.strip().upper() for t in text.split(",") if t.strip())


# -- sweep --------------------------------------------------------------------


@dataclass
class Skipped:
    group: str
    order: int
    reason: str


@dataclass
class SweepResult:
    reports: list[TheoremReport] = field(default_factory=list)
    skipped: list[Skipped] = field(default_factory=list)
    stopped_early: bool = False

    @property
    def summary(self) -> dict:
        held = sum(r.biconditional_holds for r in self.reports)
        return {
            "checked": len(self.reports),
            "held": held,
            "failed": len(self.reports) - held,
            "skipped": len(self.skipped),
        }

    @property
    def falsification_candidates(self) -> list[TheoremReport]:
        return [r for r in self.reports if r.falsification_candidate]

    @property
    def exit_code(self) -> int:
        s = self.summary
        return 0 if s["failed"] == 0 and not self.falsification_candidates else 1

    def coverage(self) -> dict[str, dict[str, int]]:
        cov = {t: {c: 0 for c in RHS_CASES[t]} for t in BICONDITIONALS}
        for r in self.reports:
            if r.theorem_id in cov and r.rhs_case is not None:
                cov[r.theorem_id][r.rhs_case] += 1
        return cov

    def unexercised(self, theorems=BICONDITIONALS) -> list[str]:
        cov = self.coverage()
        return [f"{t} {c}" for t in BICONDITIONALS if t in theorems for c, n in cov[t].items() if n == 0]


def _primes_for(G: GroupTable, primes) -> list[int]:
    ps = prime_divisors(G.order)
    if primes == "all":
        return ps
    return [primes] if primes in ps else []


def verify_group(G: GroupTable, theorems, primes="all") -> tuple[list[TheoremReport], Skipped | None]:
    """Every selected report for one group; lattice-cap failures become a skip."""
    ps = _primes_for(G, primes)
    if not ps:
        return [], None
    try:
        lattice = all_subgroups(G)
    except LatticeTooLarge as exc:
        return [], Skipped(G.name, G.order, str(exc))
    smallest = prime_divisors(G.order)[0]
    reports = []
    for p in ps:
        for t in theorems:
            if t == "C1" and p != smallest:
                continue
            reports.append(verify(G, lattice, p, t))
    return reports, None


def _verify_task(args):
    return verify_group(*args)


def run_sweep(config: RunConfig, groups: list[GroupTable] | None = None) -> SweepResult:
    config.validate()
    if groups is None:
        groups = default_corpus(max_order=config.max_order, files=config.corpus_files)
    result = SweepResult()
    todo = []
    for G in groups:
        if G.order > config.max_order:
            result.skipped.append(Skipped(G.name, G.order, f"order {G.order} exceeds max_order {config.max_order}"))
        else:
            todo.append(G)
    tasks = [(G, config.theorems, config.primes) for G in todo]
    if config.parallelism == 1:
        outputs = map(_verify_task, tasks)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=config.parallelism)
        outputs = pool.map(_verify_task, tasks)
    try:
        for reports, skipped in outputs:
            if skipped is not None:
                result.skipped.append(skipped)
            result.reports.extend(reports)
            if config.fail_fast and any(not r.biconditional_holds for r in reports):
                result.stopped_early = True
                break
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    result.reports.sort(key=lambda r: r.sort_key)
    result.skipped.sort(key=lambda s: (s.group, s.order))
    return result


# -- rendering ----------------------------------------------------------------


def _coverage_lines(result: SweepResult, theorems) -> list[str]:
    lines = ["case coverage:"]
    cov = result.coverage()
    for t in BICONDITIONALS:
        if t not in theorems:
            continue
        parts = [f"{c}={n}" for c, n in cov[t].items()]
        lines.append(f"  {t}: " + " ".join(parts))
    for item in result.unexercised(theorems):
        lines.append(f"  NOT EXERCISED: {item} (no corpus group within the caps matches this case)")
    return lines


def render_json(result: SweepResult, config: RunConfig) -> str:
    doc = {
        "reports": [r.to_dict() for r in result.reports],
        "summary": result.summary,
        "skipped": [s.__dict__ for s in result.skipped],
        "coverage": {t: c for t, c in result.coverage().items() if t in config.theorems},
        "unexercised_cases": result.unexercised(config.theorems),
        "falsification_candidates": len(result.falsification_candidates),
        "stopped_early": result.stopped_early,
    }
    return json.dumps(doc, indent=2) + "\n"


def render_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in result.reports:
        writer.writerow(
            [r.group_name, r.group_order, r.prime, r.theorem_id, r.lhs, r.rhs_case or "", r.biconditional_holds, r.witness or ""]
        )
    return buf.getvalue()


def _trailer(result: SweepResult, config: RunConfig) -> list[str]:
    lines = []
    for s in result.skipped:
        lines.append(f"skipped: {s.group} (order {s.order}): {s.reason}")
    lines.extend(_coverage_lines(result, config.theorems))
    if result.stopped_early:
        lines.append("stopped at the first failure (--fail-fast)")
    lines.append("summary: " + json.dumps(result.summary))
    return lines


def render_text(result: SweepResult, config: RunConfig) -> str:
    lines = []
    for r in result.reports:
        status = "ok  " if r.biconditional_holds else "FAIL"
        case = r.rhs_case or "-"
        line = f"{status} {r.group_name:<14} |G|={r.group_order:<4} p={r.prime:<3} {r.theorem_id}  lhs={r.lhs!s:<5} rhs={r.rhs!s:<5} case={case}"
        if not r.biconditional_holds and r.witness:
            line += f"  [{r.witness}]"
        lines.append(line)
    lines.extend(_trailer(result, config))
    return "\n".join(lines) + "\n"


# -- explain ------------------------------------------------------------------


def explain_text(G: GroupTable, p: int, theorem_id: str) -> str:
    if p not in prime_divisors(G.order):
        raise ConfigError(f"{p} is not a prime divisor of |{G.name}| = {G.order}")
    lattice = all_subgroups(G)
    profiles = subgroup_profiles(lattice)
    out = [
        f"group {G.name}, order {G.order} ({G.provenance})",
        f"lattice: {len(lattice)} subgroups in {len(lattice.conjugacy_classes)} conjugacy classes",
        "",
        f"{'#':>4} {'order':>5} {'class':>5}  TI     subnormal p'-order self-centr. nilpotent abelian  generators",
    ]
    for i, (H, prof) in enumerate(zip(lattice.all, profiles)):
        out.append(
            f"{i:>4} {H.order:>5} {lattice.class_of[i]:>5}  {prof.ti!s:<6} {prof.subnormal!s:<9} "
            f"{bool(H.order % p)!s:<8} {prof.self_centralizing!s:<11} {prof.nilpotent!s:<9} {prof.abelian!s:<7}  "
            + ", ".join(G.label(g) for g in H.gens)
        )
    out.append("")
    F = frobenius_decomposition(G, lattice)
    if F is None:
        out.append("Frobenius decomposition: none")
    else:
        kern = f"Z{F.kernel_prime}^{F.kernel_rank}" if F.kernel_prime else "not elementary abelian"
        out.append(
            f"Frobenius decomposition: kernel order {F.kernel.order} ({kern}), "
            f"complement order {F.complement.order} generated by "
            + ", ".join(G.label(g) for g in F.complement.gens)
        )
    out.append("")
    if theorem_id in BICONDITIONALS:
        lhs, bad = lhs_condition(G, lattice, p, LHS_FILTER[theorem_id])
        out.append(f"LHS ({LHS_FILTER[theorem_id].value}): {lhs}")
        if bad is not None:
            out.append(f"  violating subgroup #{lattice.position(bad)}: {bad.describe()}")
        out.append("RHS cases (first match wins):")
        for check in rhs_checks(G, lattice, p, theorem_id):
            out.append(f"  {check.label}: {'matched' if check.matched else 'no'}")
            out.extend(f"    - {note}" for note in check.notes)
    elif theorem_id in EQUIVALENCES or theorem_id == "C1":
        filters = EQUIVALENCES.get(theorem_id, (SubgroupFilter.NON_NILPOTENT,))
        for filt in filters:
            lhs, bad = lhs_condition(G, lattice, p, filt)
            out.append(f"LHS ({filt.value}): {lhs}")
            if bad is not None:
                out.append(f"  violating subgroup #{lattice.position(bad)}: {bad.describe()}")
    else:
        raise ConfigError(f"unknown theorem id {theorem_id!r}")
    report = verify(G, lattice, p, theorem_id)
    out.append("")
    out.append("report: " + json.dumps(report.to_dict()))
    return "\n".join(out) + "\n"


# -- click wiring ---------------------------------------------------------------


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _base_config() -> dict:
    path = os.environ.get(CONFIG_ENV)
    return load_config_file(path) if path else {}


def _corpus_or_exit(max_order: int, files) -> list[GroupTable]:
    try:
        return default_corpus(max_order=max_order, files=files)
    except GroupParseError as exc:
        _fail(f"corpus parse error: {exc}")
    except OSError as exc:
        _fail(f"cannot read corpus file {exc.filename}: {exc.strerror}")


@click.group()
def main() -> None:
    """Brute-force verification of TI / subnormal / p'-order classifications."""


@main.command("verify")
@click.option("--max-order", type=int, default=None, help="Largest group order to verify (at most the lattice cap).")
@click.option("--theorems", default=None, help="Comma-separated theorem ids (T1,T2,T3,C1,T5,T6,T7).")
@click.option("--primes", default=None, help="'all' or a single prime.")
@click.option("--corpus", "corpus_files", multiple=True, type=click.Path(), help="Extra group file; repeatable.")
@click.option("--format", "output_format", type=click.Choice(FORMATS), default=None)
@click.option("--jobs", type=int, default=None, help="Worker processes.")
@click.option("--fail-fast", is_flag=True, default=None, help="Stop at the first failed biconditional.")
def verify_cmd(max_order, theorems, primes, corpus_files, output_format, jobs, fail_fast):
    """Sweep the corpus and report every (group, prime, theorem)."""
    try:
        values = _base_config()
        overrides = {
            "max_order": max_order,
            "theorems": _split_theorems(theorems) if theorems else None,
            "primes": primes,
            "corpus_files": tuple(corpus_files) if corpus_files else None,
            "output_format": output_format,
            "parallelism": jobs,
            "fail_fast": fail_fast,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        config = RunConfig(**values).validate()
    except ConfigError as exc:
        _fail(str(exc))
    groups = _corpus_or_exit(config.max_order, config.corpus_files)
    result = run_sweep(config, groups)
    if config.output_format == "json":
        click.echo(render_json(result, config), nl=False)
        click.echo("\n".join(_trailer(result, config)), err=True)
    elif config.output_format == "csv":
        click.echo(render_csv(result), nl=False)
        click.echo("\n".join(_trailer(result, config)), err=True)
    else:
        click.echo(render_text(result, config), nl=False)
    sys.exit(result.exit_code)


@main.command("explain")
@click.argument("group")
@click.argument("prime", type=int)
@click.argument("theorem")
def explain_cmd(group, prime, theorem):
    """Show the lattice, predicates and case checks behind one verdict."""
    try:
        values = _base_config()
    except ConfigError as exc:
        _fail(str(exc))
    files = values.get("corpus_files", ())
    groups = _corpus_or_exit(LATTICE_MAX_ORDER, files)
    matches = [G for G in groups if G.name == group]
    if not matches:
        _fail(f"unknown group {group!r}; see 'tigroups list-corpus'")
    try:
        text = explain_text(matches[0], prime, theorem.upper())
    except (ConfigError, LatticeTooLarge) as exc:
        _fail(str(exc))
    click.echo(text, nl=False)


@main.command("list-corpus")
@click.option("--max-order", type=int, default=LATTICE_MAX_ORDER)
@click.option("--corpus", "corpus_files", multiple=True, type=click.Path())
def list_corpus_cmd(max_order, corpus_files):
    """List corpus groups with their orders and constructions."""
    try:
        values = _base_config()
    except ConfigError as exc:
        _fail(str(exc))
    files = tuple(corpus_files) or values.get("corpus_files", ())
    for G in _corpus_or_exit(max_order, files):
        click.echo(f"{G.name}\t{G.order}\t{G.provenance}")


if __name__ == "__main__":  # pragma: no cover
    main()
