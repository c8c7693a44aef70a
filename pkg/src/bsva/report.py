"""Batch tables: ratios, separation matrix, fiber counts and type evidence."""
from __future__ import annotations

import random

from bsva.angles import format_rational, normalize
from bsva.errors import BudgetExhausted, InvalidParams
from bsva.relation import (
    DEFAULT_KERNEL_DEPTH,
    DEFAULT_SAMPLES,
    classify_type,
    distinguish,
    fiber_count_check,
    param_warnings,
)


def _label(p):
    return f"{p.n},{p.m}"


def build_report(params_list, samples=DEFAULT_SAMPLES, depth=DEFAULT_KERNEL_DEPTH, seed=0,
                 jobs=1, fiber_samples=20) -> dict:
    rows = []
    for p in params_list:
        row = {"params": _label(p), "n": p.n, "m": p.m, "warnings": param_warnings(p)}
        if not p.admissible:
            row.update(lambda_=None, status="invalid")
            rows.append(row)
            continue
        try:
            verdict = classify_type(p, samples, depth, seed=seed, jobs=jobs)
        except BudgetExhausted as exc:
            row.update(status="partial", error=str(exc))
        else:
            row.update(
                status="ok",
                verdict=verdict.verdict,
                image_units=verdict.image_units,
                kernel_passed=verdict.kernel.passed,
                kernel_samples=verdict.kernel.samples,
                rotation_depth=verdict.kernel.max_depth_used,
            )
        rng = random.Random(seed)
        counts = set()
        for _ in range(fiber_samples):
            q = rng.randrange(1, 60)
            counts.add(fiber_count_check(p, normalize(rng.randrange(q), q)))
        row["fibers"] = sorted(counts)
        row["lambda"] = format_rational(distinguish(p, p).lambda1)
        rows.append(row)

    labels = [_label(p) for p in params_list]
    matrix = []
    for p1 in params_list:
        line = []
        for p2 in params_list:
            try:
                line.append(distinguish(p1, p2).separated)
            except InvalidParams:
                line.append(None)
        matrix.append(line)
    for row in rows:
        row.pop("lambda_", None)
    return {
        "seed": seed,
        "samples": samples,
        "depth": depth,
        "rows": rows,
        "separation": {"labels": labels, "separated": matrix},
    }


def render_markdown(rep: dict) -> str:
    out = ["# BS(n,m) circle relation report", ""]
    out.append(f"seed {rep['seed']}, kernel samples {rep['samples']}, max depth {rep['depth']}")
    out.append("")
    out.append("| n,m | lambda | verdict | image units | kernel | depth D | fibers | warnings |")
    out.append("|---|---|---|---|---|---|---|---|")
    for r in rep["rows"]:
        if r["status"] == "invalid":
            out.append(f"| {r['params']} | - | invalid | - | - | - | - | {'; '.join(r['warnings'])} |")
            continue
        if r["status"] == "partial":
            verdict = kernel = depth = units = "partial"
        else:
            verdict, units = r["verdict"], r["image_units"]
            kernel = f"{r['kernel_passed']}/{r['kernel_samples']}"
            depth = r["rotation_depth"]
        fibers = ", ".join(str(tuple(f)) for f in r["fibers"])
        out.append(f"| {r['params']} | {r['lambda']} | {verdict} | {units} | {kernel} | {depth} "
                   f"| {fibers} | {'; '.join(r['warnings'])} |")
    out.append("")
    labels = rep["separation"]["labels"]
    out.append("## Separation matrix (S = separated, . = not separated)")
    out.append("")
    out.append("| | " + " | ".join(labels) + " |")
    out.append("|---" * (len(labels) + 1) + "|")
    for label, line in zip(labels, rep["separation"]["separated"]):
        cells = ["?" if v is None else ("S" if v else ".") for v in line]
        out.append(f"| {label} | " + " | ".join(cells) + " |")
    return "\n".join(out) + "\n"
