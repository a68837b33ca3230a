"""Scenario-file runner: parses group/scenario descriptions, orchestrates the
analyses, and emits text, JSON and DOT outputs.

Exit codes: 0 all requested checks pass, 1 a theory-derived equivalence or
axiom failed, 2 input error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import fusion, hopf, lattices, subfactor
from .groups import (
    Group,
    Subgroup,
    enumerate_subgroups,
    generating_set,
    group_from_permutations,
    subgroup_from_words,
)
from .subfactor import DepthStatus, InclusionScenario, Verdict

SCHEMA_VERSION = "normint.report/1"

DEFAULT_ANALYSES = {
    "normal_lattice": True,
    "chain_lengths": True,
    "modularity": True,
    "quasi_normal": True,
    "hopf_crosscheck": False,
    "depth2": True,
    "subhopf_enumeration": False,
}

KIND_REQUIRED = {
    "crossed_product": (),
    "fixed_point": (),
    "intermediate_crossed": ("H",),
    "intermediate_fixed": ("H",),
    "group_type": ("A", "B"),
}


class InputError(ValueError):
    pass


@dataclass
class ScenarioFile:
    path: str
    group_name: str
    degree: int
    generator_words: list[str]
    kind: str
    subgroup_words: dict[str, list[str]]
    analyses: dict[str, bool]
    formats: list[str]
    directory: str


def split_generator_list(text: str) -> list[str]:
    """Split a generator list on commas outside parentheses."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise InputError(f"unbalanced parentheses in {text!r}")
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return [p for p in parts if p]


def _parse_bool(value: str, key: str) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "on", "1"):
        return True
    if v in ("false", "no", "off", "0"):
        return False
    raise InputError(f"analysis toggle {key!r} must be boolean, got {value!r}")


def parse_scenario(path: str | Path) -> ScenarioFile:
    """Parse and validate a scenario file (see docs/scenario-format.md)."""
    p = Path(path)
    if not p.is_file():
        raise InputError(f"scenario file not found: {p}")
    cp = configparser.ConfigParser()
    cp.optionxform = str
    try:
        cp.read_string(p.read_text(encoding="utf-8"), source=str(p))
    except configparser.Error as exc:
        raise InputError(f"parse error in {p}: {exc}") from exc
    if "group" not in cp:
        raise InputError(f"{p}: missing [group] section")
    if "scenario" not in cp:
        raise InputError(f"{p}: missing [scenario] section")
    grp = cp["group"]
    try:
        degree = int(grp.get("degree", "0"))
    except ValueError:
        raise InputError(f"{p}: degree must be an integer") from None
    gen_text = grp.get("generators")
    if not gen_text:
        raise InputError(f"{p}: [group] needs a generators entry")
    generators = split_generator_list(gen_text)
    if degree <= 0:
        raise InputError(f"{p}: [group] needs a positive degree")
    scen = cp["scenario"]
    kind = scen.get("kind", "").strip()
    if kind not in KIND_REQUIRED:
        raise InputError(
            f"{p}: unknown scenario kind {kind!r}; expected one of {', '.join(KIND_REQUIRED)}"
        )
    subgroup_words: dict[str, list[str]] = {}
    for key in ("A", "B", "H"):
        if key in scen:
            subgroup_words[key] = split_generator_list(scen[key])
    for key in KIND_REQUIRED[kind]:
        if key not in subgroup_words:
            raise InputError(f"{p}: scenario kind {kind!r} requires field {key}")
    analyses = dict(DEFAULT_ANALYSES)
    if "analyses" in cp:
        for key, value in cp["analyses"].items():
            if key not in DEFAULT_ANALYSES:
                raise InputError(f"{p}: unknown analysis toggle {key!r}")
            analyses[key] = _parse_bool(value, key)
    formats = ["text"]
    directory = "."
    if "output" in cp:
        out = cp["output"]
        if "formats" in out:
            formats = [f.strip() for f in out["formats"].split(",") if f.strip()]
            for f in formats:
                if f not in ("text", "json", "dot"):
                    raise InputError(f"{p}: unknown output format {f!r}")
        directory = out.get("directory", ".").strip()
    return ScenarioFile(
        path=str(p),
        group_name=grp.get("name", "G").strip(),
        degree=degree,
        generator_words=generators,
        kind=kind,
        subgroup_words=subgroup_words,
        analyses=analyses,
        formats=formats,
        directory=directory,
    )


# ---------------------------------------------------------------------------
# report

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class AnalysisReport:
    scenario_file: ScenarioFile
    scenario: InclusionScenario
    lattice_report: subfactor.NormalLatticeReport
    quasi_verdicts: list[Verdict | None]
    depth2: DepthStatus | None
    crosscheck: subfactor.CrosscheckReport | None
    subhopf_counts: dict[str, int] | None
    checks: list[CheckResult] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def all_checks_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        """Structured report; deterministic (no timing, canonical orders)."""
        rep = self.lattice_report
        intermediates = []
        for i, (obj, res) in enumerate(zip(rep.catalog, rep.normality)):
            entry = {
                "name": obj.name,
                "family": obj.family,
                "subgroup_order": obj.subgroup.size,
                "subgroup_generators": [
                    self.scenario.group.labels[x] for x in generating_set(obj.subgroup)
                ],
                "normal": res.verdict.value,
                "criterion": res.criterion,
            }
            if res.witness is not None:
                entry["witness"] = res.witness
            if res.details:
                entry["details"] = {
                    k: (v if isinstance(v, (bool, int, str)) else str(v))
                    for k, v in sorted(res.details.items())
                }
            qv = self.quasi_verdicts[i]
            if qv is not None:
                entry["quasi_normal"] = qv.value
            intermediates.append(entry)
        doc = {
            "schema": SCHEMA_VERSION,
            "scenario": {
                "kind": self.scenario.kind,
                "group": {
                    "name": self.scenario_file.group_name,
                    "degree": self.scenario_file.degree,
                    "generators": self.scenario_file.generator_words,
                    "order": self.scenario.group.order,
                },
                "subgroups": {
                    k: v for k, v in sorted(self.scenario_file.subgroup_words.items())
                },
                "exact_factorization": self.scenario.exact_factorization,
                "catalog_complete": rep.catalog_complete,
            },
            "intermediates": intermediates,
            "lattice": {
                "nodes": list(rep.lattice.names),
                "normal_nodes": [rep.lattice.names[i] for i in rep.normal_indices],
                "normal_is_sublattice": rep.is_sublattice,
                "normal_modular": rep.modular,
                "normal_chain_lengths": {str(k): v for k, v in rep.chain_lengths.items()},
            },
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }
        if self.depth2 is not None:
            doc["depth2"] = self.depth2.value
        if self.crosscheck is not None:
            doc["hopf_crosscheck"] = {
                "all_pass": self.crosscheck.all_pass,
                "rows": [
                    {
                        "name": r.name,
                        "subgroup_order": r.subgroup_order,
                        "group_normal": r.group_normal,
                        "projection_central": r.projection_central,
                        "subhopf_ad_invariant": r.subhopf_ad_invariant,
                        "subhopf_augmentation": r.subhopf_augmentation,
                        "projection_test": r.projection_test,
                    }
                    for r in self.crosscheck.rows
                ],
            }
        if self.subhopf_counts is not None:
            doc["subhopf_enumeration"] = dict(sorted(self.subhopf_counts.items()))
        return doc

    def to_text(self) -> str:
        rep = self.lattice_report
        lines = []
        lines.append(f"scenario: {self.scenario.describe()}")
        lines.append(f"group:    {self.scenario_file.group_name} of order {self.scenario.group.order}")
        lines.append(f"catalog:  {len(rep.catalog)} intermediates"
                     + ("" if rep.catalog_complete else " (two-family catalog; completeness not claimed)"))
        if self.depth2 is not None:
            lines.append(f"depth-2:  {self.depth2.value}")
        lines.append("")
        width = max(len(o.name) for o in rep.catalog)
        for i, (obj, res) in enumerate(zip(rep.catalog, rep.normality)):
            quasi = self.quasi_verdicts[i]
            quasi_txt = f"  quasi-normal={quasi.value}" if quasi is not None else ""
            witness_txt = f"  witness={res.witness}" if res.witness else ""
            detail_txt = ""
            if res.details:
                detail_txt = "  [" + ", ".join(f"{k}={v}" for k, v in sorted(res.details.items())) + "]"
            lines.append(
                f"  {obj.name:<{width}}  |H|={obj.subgroup.size:<4d} normal={res.verdict.value:<22}"
                f"{quasi_txt}{witness_txt}  ({res.criterion}){detail_txt}"
            )
        lines.append("")
        lines.append(f"normal nodes:         {[rep.lattice.names[i] for i in rep.normal_indices]}")
        lines.append(f"normal is sublattice: {rep.is_sublattice}")
        lines.append(f"normal modular:       {rep.modular}")
        lines.append(f"normal chain lengths: {rep.chain_lengths}")
        if self.crosscheck is not None:
            lines.append("")
            lines.append(f"hopf crosscheck: {'PASS' if self.crosscheck.all_pass else 'FAIL'}")
            for r in self.crosscheck.rows:
                lines.append(
                    f"  {r.name}: normal={r.group_normal} central={r.projection_central} "
                    f"ad={r.subhopf_ad_invariant} aug={r.subhopf_augmentation} projection_test={r.projection_test}"
                )
        if self.subhopf_counts is not None:
            lines.append("")
            lines.append(f"subHopf enumeration: {self.subhopf_counts}")
        lines.append("")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            lines.append(f"check {status}: {c.name}{detail}")
        lines.append("")
        lines.append(f"elapsed: {self.elapsed_s:.2f} s")
        return "\n".join(lines) + "\n"


def build_group(sf: ScenarioFile) -> Group:
    try:
        return group_from_permutations(sf.generator_words, degree=sf.degree)
    except ValueError as exc:
        raise InputError(f"{sf.path}: {exc}") from exc


def build_scenario(sf: ScenarioFile, g: Group) -> InclusionScenario:
    subs: dict[str, Subgroup] = {}
    for key, words in sf.subgroup_words.items():
        try:
            subs[key] = subgroup_from_words(g, words)
        except ValueError as exc:
            raise InputError(f"{sf.path}: subgroup {key}: {exc}") from exc
    try:
        if sf.kind == "crossed_product":
            return subfactor.crossed_product(g)
        if sf.kind == "fixed_point":
            return subfactor.fixed_point(g)
        if sf.kind == "intermediate_crossed":
            return subfactor.intermediate_crossed(subs["H"], g)
        if sf.kind == "intermediate_fixed":
            return subfactor.intermediate_fixed(subs["H"], g)
        return subfactor.group_type(subs["A"], subs["B"], g)
    except ValueError as exc:
        raise InputError(f"{sf.path}: {exc}") from exc


def run(sf: ScenarioFile, seed: int = 0) -> AnalysisReport:
    """Run the requested analyses; deterministic for identical inputs."""
    t0 = time.perf_counter()
    g = build_group(sf)
    scenario = build_scenario(sf, g)
    rep = subfactor.normal_sublattice_report(scenario)
    quasi: list[Verdict | None] = [None] * len(rep.catalog)
    if sf.analyses["quasi_normal"]:
        quasi = [
            subfactor.is_quasi_normal(scenario, k, rep.catalog) for k in rep.catalog
        ]
    depth = subfactor.depth2_status(scenario) if sf.analyses["depth2"] else None
    crosscheck = None
    if sf.analyses["hopf_crosscheck"]:
        if scenario.kind in ("crossed_product", "fixed_point"):
            crosscheck = subfactor.hopf_crosscheck(scenario)
        else:
            raise InputError(
                f"{sf.path}: hopf_crosscheck applies to crossed_product/fixed_point scenarios"
            )
    subhopf_counts = None
    if sf.analyses["subhopf_enumeration"]:
        algebra = hopf.group_algebra(g)
        dual, _ = hopf.dual_hopf(algebra)
        subhopf_counts = {
            "group_algebra": len(hopf.enumerate_subhopf(algebra, seed=seed)),
            "dual": len(hopf.enumerate_subhopf(dual, seed=seed)),
        }
    checks: list[CheckResult] = []
    if sf.analyses["quasi_normal"] and scenario.kind != "group_type":
        bad = [
            rep.catalog[i].name
            for i in rep.normal_indices
            if quasi[i] is not Verdict.YES
        ]
        checks.append(
            CheckResult(
                "normal implies quasi-normal",
                not bad,
                "" if not bad else f"violations: {bad}",
            )
        )
    if sf.analyses["normal_lattice"]:
        checks.append(
            CheckResult(
                "normal nodes closed under meet and join",
                rep.is_sublattice,
            )
        )
        if sf.analyses["modularity"]:
            checks.append(
                CheckResult(
                    "normal sublattice is modular",
                    bool(rep.modular),
                    "" if rep.modular else f"witness {rep.modular_witness}",
                )
            )
        if sf.analyses["chain_lengths"]:
            checks.append(
                CheckResult(
                    "normal maximal chains have equal length",
                    len(rep.chain_lengths) == 1,
                    f"lengths {sorted(rep.chain_lengths)}",
                )
            )
    if crosscheck is not None:
        checks.append(
            CheckResult(
                "group/Hopf/projection normality predicates agree",
                crosscheck.all_pass,
            )
        )
    report = AnalysisReport(
        scenario_file=sf,
        scenario=scenario,
        lattice_report=rep,
        quasi_verdicts=quasi,
        depth2=depth,
        crosscheck=crosscheck,
        subhopf_counts=subhopf_counts,
        checks=checks,
    )
    report.elapsed_s = time.perf_counter() - t0
    return report


def emit(report: AnalysisReport, formats: list[str], directory: str | Path) -> list[Path]:
    """Write the requested output files; returns the written paths."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if "text" in formats:
        path = out_dir / "report.txt"
        path.write_text(report.to_text(), encoding="utf-8")
        written.append(path)
    if "json" in formats:
        doc = report.to_dict()
        validate_report_dict(doc)
        path = out_dir / "report.json"
        path.write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        written.append(path)
    if "dot" in formats:
        rep = report.lattice_report
        path = out_dir / "lattice.dot"
        path.write_text(
            lattices.to_dot(rep.lattice, highlight=rep.normal_indices),
            encoding="utf-8",
        )
        written.append(path)
    return written


_VERDICT_VALUES = {v.value for v in Verdict}
_DEPTH_VALUES = {v.value for v in DepthStatus}


def validate_report_dict(doc: dict) -> None:
    """Structural validation of the JSON report (schema closure included)."""
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"report schema must be {SCHEMA_VERSION!r}")
    for key in ("scenario", "intermediates", "lattice", "checks"):
        if key not in doc:
            raise ValueError(f"report is missing key {key!r}")
    names = [e["name"] for e in doc["intermediates"]]
    if len(names) != len(set(names)):
        raise ValueError("intermediates must appear exactly once")
    for entry in doc["intermediates"]:
        if entry["normal"] not in _VERDICT_VALUES:
            raise ValueError(f"unknown normal verdict {entry['normal']!r}")
        if "quasi_normal" in entry and entry["quasi_normal"] not in _VERDICT_VALUES:
            raise ValueError(f"unknown quasi-normal verdict {entry['quasi_normal']!r}")
        if entry["family"] not in ("crossed_by", "fixed_by"):
            raise ValueError(f"unknown family {entry['family']!r}")
    if "depth2" in doc and doc["depth2"] not in _DEPTH_VALUES:
        raise ValueError(f"unknown depth2 verdict {doc['depth2']!r}")
    lat = doc["lattice"]
    if not set(lat["normal_nodes"]) <= set(lat["nodes"]):
        raise ValueError("normal nodes must be lattice nodes")
    for c in doc["checks"]:
        if not isinstance(c["passed"], bool):
            raise ValueError("check results must be boolean")


# ---------------------------------------------------------------------------
# commands

def _cmd_analyze(args: argparse.Namespace) -> int:
    sf = parse_scenario(args.file)
    if args.emit:
        formats = [f.strip() for f in args.emit.split(",") if f.strip()]
        for f in formats:
            if f not in ("text", "json", "dot"):
                raise InputError(f"unknown output format {f!r}")
        sf.formats = formats
    if args.out:
        sf.directory = args.out
    report = run(sf, seed=args.seed)
    emit(report, sf.formats, sf.directory)
    sys.stdout.write(report.to_text())
    return 0 if report.all_checks_pass else 1


def _cmd_groups_subgroups(args: argparse.Namespace) -> int:
    sf = parse_scenario(args.file)
    g = build_group(sf)
    subs = enumerate_subgroups(g)
    sys.stdout.write(f"group {sf.group_name} of order {g.order}: {len(subs)} subgroups\n")
    for s in subs:
        gens = generating_set(s)
        gen_text = ", ".join(g.labels[i] for i in gens) if gens else "e"
        sys.stdout.write(f"  order {s.size:<4d} <{gen_text}>\n")
    return 0


def _cmd_hopf_verify(args: argparse.Namespace) -> int:
    path = Path(args.file)
    if not path.is_file():
        raise InputError(f"file not found: {path}")
    try:
        algebra = hopf.read_hopf_text(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    checks = hopf.verify_hopf_axioms(algebra)
    ok = True
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        witness = f" (witness {c.witness})" if c.witness else ""
        sys.stdout.write(f"{status}: {c.name}{witness}\n")
        ok = ok and c.passed
    return 0 if ok else 1


def _cmd_hopf_subhopf(args: argparse.Namespace) -> int:
    path = Path(args.file)
    if not path.is_file():
        raise InputError(f"file not found: {path}")
    try:
        algebra = hopf.read_hopf_text(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    found = hopf.enumerate_subhopf(algebra, seed=args.seed)
    sys.stdout.write(f"{len(found)} subHopf *-algebras of a dim-{algebra.dim} algebra\n")
    for k in found:
        sys.stdout.write(f"  dim {k.dim}\n")
    return 0


def _cmd_fusion_graph(args: argparse.Namespace) -> int:
    path = Path(args.file)
    if not path.is_file():
        raise InputError(f"file not found: {path}")
    try:
        graph = fusion.read_graph_text(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    try:
        v = graph.even_index(args.vertex)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    mult = fusion.multiplicity_in_power(graph, v, args.power)
    verdict = fusion.strongly_outer_screen(graph, v)
    sys.stdout.write(f"depth from star: {fusion.depth_from_star(graph)}\n")
    sys.stdout.write(
        f"multiplicity of {args.vertex!r} in power {args.power}: {mult}\n"
    )
    sys.stdout.write(f"screen verdict: {verdict}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normint",
        description="Exact analysis of normality for intermediate objects of finite inclusion models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="run a scenario file")
    p_an.add_argument("file")
    p_an.add_argument("--emit", help="comma-separated formats: text,json,dot")
    p_an.add_argument("--out", help="output directory")
    p_an.add_argument("--seed", type=int, default=0, help="seed for center splitting")
    p_an.set_defaults(func=_cmd_analyze)

    p_groups = sub.add_parser("groups", help="group utilities")
    groups_sub = p_groups.add_subparsers(dest="subcommand", required=True)
    p_gs = groups_sub.add_parser("subgroups", help="list subgroups of a scenario group")
    p_gs.add_argument("file")
    p_gs.set_defaults(func=_cmd_groups_subgroups)

    p_hopf = sub.add_parser("hopf", help="Hopf algebra utilities")
    hopf_sub = p_hopf.add_subparsers(dest="subcommand", required=True)
    p_hv = hopf_sub.add_parser("verify", help="verify axioms of a structure-tensor file")
    p_hv.add_argument("file")
    p_hv.set_defaults(func=_cmd_hopf_verify)
    p_hs = hopf_sub.add_parser("subhopf", help="enumerate subHopf algebras")
    p_hs.add_argument("file")
    p_hs.add_argument("--seed", type=int, default=0, help="seed for center splitting")
    p_hs.set_defaults(func=_cmd_hopf_subhopf)

    p_fusion = sub.add_parser("fusion", help="principal graph utilities")
    fusion_sub = p_fusion.add_subparsers(dest="subcommand", required=True)
    p_fg = fusion_sub.add_parser("graph", help="analyze a principal graph file")
    p_fg.add_argument("file")
    p_fg.add_argument("--vertex", required=True, help="even vertex name")
    p_fg.add_argument("--power", type=int, default=1, help="power of the walk matrix")
    p_fg.set_defaults(func=_cmd_fusion_graph)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
