"""Command line entry point.

Exit codes: 0 every verdict passes, 2 a verification finding (the report holds
the exact witness), 1 usage or resource error.
"""

from __future__ import annotations

import argparse
import logging
import signal
import sys
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path

from . import report as rpt
from .wreath import GroupParams, OutsideHypotheses

log = logging.getLogger("wreathcover")

EXIT_OK, EXIT_USAGE, EXIT_FINDING = 0, 1, 2


class UsageError(Exception):
    pass


class BudgetExceeded(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    m: int | None = None
    seed: int = 0
    trials: int = 100
    budget_secs: int | None = None
    out: str | None = None
    exhaustive: bool = False
    precision: int = 170
    group: str | None = None
    n_max: int | None = None

    def validate(self) -> None:
        if self.trials <= 0:
            raise UsageError("--trials must be positive")
        if self.budget_secs is not None and self.budget_secs <= 0:
            raise UsageError("--budget-secs must be positive")
        if self.precision < 16:
            raise UsageError("--precision must be at least 16 bits")


def _need(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"{cfg.command} needs --{name.replace('_', '-')}")


# commands -------------------------------------------------------------------------------


def cmd_sigma_formula(cfg: RunConfig):
    from .covering import covering_classes, sigma_formula, subgroup_order
    from .snsub import text

    _need(cfg, "n", "m")
    if cfg.n % 6:
        raise UsageError("sigma-formula needs n = 0 mod 6")
    design = covering_classes(cfg.n, cfg.m)
    total = sigma_formula(cfg.n, cfg.m)
    rows = []
    for desc, count in design.classes:
        label = f"socle-index:{desc.r}" if hasattr(desc, "r") else f"normalizer:{text(desc.base)}"
        rows.append(
            {
                "class": label,
                "members": rpt.num(count, "formula"),
                "subgroup_order": rpt.num(subgroup_order(desc, design.params), "formula"),
            }
        )
    results = {
        "total": rpt.num(total, "formula"),
        "breakdown": rows,
        "breakdown_sum_matches": design.total == total,
        "flags": design.flags,
    }
    ok = design.total == total
    return results, ok, [] if ok else [{"kind": "breakdown mismatch", "sum": design.total, "total": total}]


def _group(cfg: RunConfig):
    from .exact_small import LATTICE_CAP, named_group, wreath_order

    _need(cfg, "group")
    big = wreath_order(cfg.group)
    if big is not None and big > LATTICE_CAP:
        raise BudgetExceeded(f"{cfg.group} has order {big}: exact solvers are out of budget, membership work only")
    try:
        G = named_group(cfg.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if G.order > LATTICE_CAP:
        raise BudgetExceeded(f"{G.name} has order {G.order}, above the exact-solver cap {LATTICE_CAP}")
    return G


def _subgroup_entry(G, mask: int) -> dict:
    elems = G.members(mask)
    return {"order": rpt.num(len(elems), "enumeration"), "elements": [str(G.elements[i]) for i in elems]}


def cmd_sigma_exact(cfg: RunConfig):
    from .exact_small import NotCoverable, sigma_exact

    G = _group(cfg)
    try:
        res = sigma_exact(G)
    except NotCoverable as exc:
        raise UsageError(f"not coverable: {exc}") from exc
    ok = res.verify(G)
    results = {
        "group": G.name,
        "order": rpt.num(G.order, "enumeration"),
        "sigma": rpt.num(res.value, "enumeration"),
        "root_lower_bound": rpt.num(res.lower_bound, "enumeration"),
        "witness": [_subgroup_entry(G, s) for s in res.witness],
        "witness_verified": ok,
    }
    return results, ok, [] if ok else [{"kind": "witness does not cover", "group": G.name}]


def cmd_omega_exact(cfg: RunConfig):
    from .exact_small import NotTwoGenerated, omega_exact

    G = _group(cfg)
    try:
        res = omega_exact(G)
    except NotTwoGenerated as exc:
        raise UsageError(f"undefined: {exc}") from exc
    ok = res.verify(G)
    results = {
        "group": G.name,
        "order": rpt.num(G.order, "enumeration"),
        "omega": rpt.num(res.value, "enumeration"),
        "witness": [str(G.elements[i]) for i in res.witness],
        "witness_verified": ok,
    }
    return results, ok, [] if ok else [{"kind": "witness is not a clique", "group": G.name}]


def _closure_results(closure) -> dict:
    return {
        "checked": rpt.num(closure.checked, "sampled"),
        "failures": [str(f) for f in closure.failures],
        "overlaps": [str(o) for o in closure.overlaps],
        "ok": closure.ok,
    }


def cmd_verify_covering(cfg: RunConfig):
    from .covering import verify_theorem1

    _need(cfg, "n", "m")
    if cfg.n % 6:
        raise UsageError("verify-covering needs n = 0 mod 6")
    params = GroupParams(cfg.n, cfg.m)
    out = verify_theorem1(params, cfg.trials, cfg.seed)
    findings = []
    uniq = out["uniqueness"]
    for row in uniq.findings:
        findings.append({"kind": "uniqueness", "class": row["class"], "family": str(row["i"]), "members": row["members"]})
    if not uniq.d_class_ok:
        findings.append({"kind": "uniqueness", "detail": "a family member meets every rotation class"})
    if not out["closure"].ok:
        findings.append({"kind": "closure", "detail": _closure_results(out["closure"])})
    d_rows = []
    for r in out["d_product"] + out["d_diagonal"]:
        d_rows.append({"subgroup": r.kind, "bound": rpt.num(r.bound, "formula"), "below_one": r.verdict})
        if not r.verdict:
            findings.append({"kind": "d not below 1", "subgroup": r.kind, "bound": str(r.bound)})
    results = {
        "sigma": rpt.num(out["sigma"], "formula"),
        "flags": out["flags"],
        "closure": _closure_results(out["closure"]),
        # the family index is a label, not a measured number
        "uniqueness": [{**row, "i": str(row["i"])} for row in uniq.rows],
        "d_values": d_rows,
        "conditions": out["conditions"],
        "certified": out["certified"],
    }
    if cfg.exhaustive:
        if cfg.m != 2 or cfg.n != 6:
            raise UsageError("--exhaustive enumeration is available at n=6, m=2 only")
        from .oracles import exhaustive_normalizer_counts, exhaustive_pi_report

        pi = exhaustive_pi_report(cfg.n)
        counts = exhaustive_normalizer_counts(cfg.n)
        results["exhaustive_pi"] = pi
        results["exhaustive_counts"] = counts
        if not pi["ok"]:
            findings.append({"kind": "exhaustive marked sets", "detail": pi})
        if not counts["ok"]:
            findings.append({"kind": "exhaustive counts", "detail": [r for r in counts["rows"] if not r["ok"]]})
    return results, not findings, findings


def cmd_verify_pi(cfg: RunConfig):
    from .pi_classes import closure_and_disjointness_check

    _need(cfg, "n", "m")
    params = GroupParams(cfg.n, cfg.m)
    findings = []
    if cfg.exhaustive:
        if cfg.m != 2 or cfg.n > 6:
            raise UsageError("--exhaustive enumeration is available for m=2, n<=6 only")
        from .oracles import exhaustive_pi_report, exhaustive_single_class

        pi = exhaustive_pi_report(cfg.n)
        single, members = exhaustive_single_class(cfg.n)
        results = {"exhaustive": pi, "single_class": single, "single_class_members": rpt.num(members, "enumeration")}
        if not pi["ok"]:
            findings.append({"kind": "marked sets", "detail": pi})
        if not single:
            findings.append({"kind": "single class", "n": cfg.n})
        return results, not findings, findings
    rep = closure_and_disjointness_check(params, cfg.trials, cfg.seed)
    results = _closure_results(rep)
    results["shift_moves"] = rpt.num(rep.shift_moves, "sampled")
    if not rep.ok:
        findings.append({"kind": "closure", "failures": results["failures"], "overlaps": results["overlaps"]})
    return results, rep.ok, findings


def cmd_count_intersections(cfg: RunConfig):
    from .covering import ProductNormalizer, competitors, count_pi_in_normalizer, subgroup_order
    from .pi_classes import pi_descriptors
    from .snsub import PrimitiveBound, bipartition, kset, text

    _need(cfg, "n", "m")
    params = GroupParams(cfg.n, cfg.m)
    descs = [bipartition(cfg.n)] + [kset(cfg.n, i) for i in range(1, cfg.n // 3)]
    descs += [c for c in competitors(cfg.n) if not isinstance(c, PrimitiveBound)]
    pis = pi_descriptors(params, split_shifts=True)
    rows = []
    for d in descs:
        counts = {}
        for p in pis:
            key = f"Pi({p.i})" if hasattr(p, "i") else f"Pi0({getattr(p, 'r', 2)},{getattr(p, 'shift', None)})"
            counts[key] = rpt.num(count_pi_in_normalizer(d, p, params), "formula")
        rows.append({"subgroup": text(d), "order": rpt.num(subgroup_order(ProductNormalizer(d), params), "formula"),
                     "counts": counts})
    results = {"rows": rows}
    findings = []
    if cfg.exhaustive:
        if cfg.m != 2 or cfg.n > 6:
            raise UsageError("--exhaustive enumeration is available for m=2, n<=6 only")
        from .oracles import exhaustive_normalizer_counts

        ex = exhaustive_normalizer_counts(cfg.n, descs)
        results["enumeration"] = ex
        if not ex["ok"]:
            findings.append({"kind": "formula differs from enumeration", "rows": [r for r in ex["rows"] if not r["ok"]]})
    return results, not findings, findings


def cmd_lll_check(cfg: RunConfig):
    from .lll import lll_verdict

    _need(cfg, "n", "m")
    if cfg.n % 2 or cfg.m < 2:
        raise UsageError("lll-check needs even n and m >= 2")
    r = lll_verdict(cfg.n, cfg.m, cfg.precision)
    again = lll_verdict(cfg.n, cfg.m, 2 * cfg.precision)
    results = {
        "l": rpt.num(r.l, "formula"),
        "d": rpt.num(r.d, "formula"),
        "c_h": rpt.num(r.c_h, "formula"),
        "cases": {str(j): rpt.num(v, "formula") for j, v in r.cases.items()},
        "total": rpt.num(r.total, "formula"),
        "threshold": rpt.num(r.threshold, "enclosure"),
        "verdict": r.verdict,
        "verdict_doubled_precision": again.verdict,
        "conclusion": r.conclusion(),
        "checks": {k: (v if isinstance(v, bool) else rpt.num(v, "formula")) for k, v in r.extras.items()},
    }
    findings = []
    if not r.verdict:
        findings.append({"kind": "local lemma inequality fails", "total": str(r.total),
                         "threshold_lower": str(r.threshold.lower)})
    if again.verdict != r.verdict:
        findings.append({"kind": "verdict changes with precision"})
    return results, not findings, findings


def cmd_ratio_scan(cfg: RunConfig):
    from .lll import ratio_scan, threshold_scan

    _need(cfg, "m")
    n_max = cfg.n_max or cfg.n or 240
    ts = threshold_scan(cfg.m, n_max, prec=cfg.precision)
    rs = ratio_scan(cfg.m, n_max)
    rows = []
    for n in rs.ns:
        rows.append({
            "n": n,
            "ratio": rpt.num(rs.ratios[n], "formula"),
            "certified": rs.certified[n],
        })
    results = {
        "m": cfg.m,
        "n0": ts.n0,
        "n0_eventual": ts.n0_eventual,
        "verdicts_monotone": ts.monotone,
        "precision_stable": ts.stable,
        "n1": rs.n1,
        "ratio_monotone": rs.monotone,
        "rows": rows,
    }
    findings = []
    if not ts.monotone:
        bad = [n for n in ts.ns if ts.n0 is not None and n > ts.n0 and not ts.verdicts[n]]
        findings.append({"kind": "verdict not monotone after first certified n", "uncertified": bad})
    if not ts.stable:
        findings.append({"kind": "verdict changes with precision"})
    if rs.n1 is None:
        findings.append({"kind": "ratio never exceeds 0.99 on the scan"})
    if not rs.monotone:
        findings.append({"kind": "ratio not increasing"})
    if cfg.out:
        csv_path = Path(cfg.out).with_suffix(".csv")
        rpt.write_csv(csv_path, ["n", "ratio", "ratio_approx", "certified"],
                      [[n, str(rs.ratios[n]), float(rs.ratios[n]), rs.certified[n]] for n in rs.ns])
    return results, not findings, findings


COMMANDS = {
    "sigma-formula": cmd_sigma_formula,
    "sigma-exact": cmd_sigma_exact,
    "omega-exact": cmd_omega_exact,
    "verify-covering": cmd_verify_covering,
    "verify-pi": cmd_verify_pi,
    "count-intersections": cmd_count_intersections,
    "lll-check": cmd_lll_check,
    "ratio-scan": cmd_ratio_scan,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wreathcover", description="Covering numbers and generating cliques of A_n^m x| C_2m.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--group", help="small group for the exact solvers, e.g. S5, A4, C7, D8")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--budget-secs", type=int, dest="budget_secs")
    p.add_argument("--out", help="write the JSON report here (scan commands also write a CSV next to it)")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--precision", type=int, default=170, help="interval precision in bits")
    p.add_argument("--n-max", type=int, dest="n_max", help="upper end of scans")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _on_alarm(signum, frame):
    raise BudgetExceeded("time budget exhausted")


def run(cfg: RunConfig) -> tuple[int, dict | None]:
    cfg.validate()
    if cfg.budget_secs:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.alarm(cfg.budget_secs)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OutsideHypotheses)
            results, passed, findings = COMMANDS[cfg.command](cfg)
    finally:
        if cfg.budget_secs:
            signal.alarm(0)
    config = {k: v for k, v in asdict(cfg).items() if k not in ("out", "budget_secs")}
    doc = rpt.document(cfg.command, config, results, passed, findings)
    return (EXIT_OK if passed else EXIT_FINDING), doc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k != "verbose"})
    try:
        code, doc = run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = rpt.dumps(doc)
    if cfg.out:
        rpt.write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    if doc["findings"]:
        log.warning("%d finding(s); see the report", len(doc["findings"]))
    return code


if __name__ == "__main__":
    sys.exit(main())
