"""Structured reports: plain dicts that serialize to canonical JSON.

Reports carry no timing or host data by default, so two runs on the same
input produce byte-identical JSON.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .abelian import FgAbelianGroup
from .homology import HomologyResult

SCHEMA_VERSION = 1


def _group_entry(k: int, g: FgAbelianGroup) -> dict:
    return {
        "degree": k,
        "group": g.render(primary=True),
        "free_rank": g.free_rank,
        "invariant_factors": list(g.invariant_factors),
        "primary": g.primary_parts(),
    }


@dataclass
class Report:
    scheme: str
    d: int
    n: int
    params: dict
    counts: dict
    homology: list
    ranks: list
    euler: int
    modp_ranks: dict
    torsion_ranks: dict
    ktheory: dict | None
    diagnostics: dict
    status: str
    check: dict | None = None
    ring: dict | None = None
    timing: dict | None = None
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def group(self, k: int) -> FgAbelianGroup:
        h = self.homology[k]
        return FgAbelianGroup(h["free_rank"], tuple(h["invariant_factors"]))


def build_report(scheme, counts: dict, res: HomologyResult) -> Report:
    # JSON round-trip normalizes tuples and integer keys
    diag = json.loads(json.dumps(res.diagnostics, sort_keys=True))
    return Report(
        scheme=scheme.name,
        d=scheme.d,
        n=scheme.n,
        params=dict(sorted(scheme.params.items())),
        counts=dict(sorted(counts.items())),
        homology=[_group_entry(k, g) for k, g in enumerate(res.groups)],
        ranks=res.ranks,
        euler=res.euler,
        modp_ranks={str(p): v for p, v in sorted(res.modp_ranks.items())},
        torsion_ranks={str(p): v for p, v in sorted(res.torsion_ranks.items())},
        ktheory=None if res.ktheory is None else {"K0": str(res.ktheory[0]), "K1": str(res.ktheory[1])},
        diagnostics=diag,
        status=res.status,
    )


# ---------------------------------------------------------------------------
# checking against expectations


def _lookup(diag: dict, path: str):
    cur = diag
    for part in path.split("."):
        if not isinstance(cur, dict) or part not in cur:
            return None
        cur = cur[part]
    return cur


def check_report(report: Report, expected: dict) -> dict:
    """Compare a report with an expectation block; returns verdict and per-field results."""
    fields = {}

    def record(key, want, got, ok):
        fields[key] = {"expected": want, "got": got, "verdict": "PASS" if ok else "FAIL"}

    for k, want in sorted((expected.get("groups") or {}).items()):
        got = report.group(int(k))
        record(f"H_{k}", want, str(got), got == FgAbelianGroup.parse(want))
    for k, want in sorted((expected.get("torsion") or {}).items()):
        got = report.group(int(k)).torsion
        record(f"torsion(H_{k})", want, str(got), got == FgAbelianGroup.parse(want))
    for key, want in sorted((expected.get("diagnostics") or {}).items()):
        got = _lookup(report.diagnostics, key)
        if isinstance(want, str) and isinstance(got, str) and key.startswith("t"):
            ok = FgAbelianGroup.parse(got) == FgAbelianGroup.parse(want)
        else:
            ok = got == want
        record(key, want, got, ok)
    for key, want in sorted((expected.get("ktheory") or {}).items()):
        got = (report.ktheory or {}).get(key)
        record(key, want, got, got is not None and FgAbelianGroup.parse(got) == FgAbelianGroup.parse(want))
    for key, want in sorted((expected.get("counts") or {}).items()):
        got = report.counts.get(key)
        record(key, want, got, got == want)
    for p, per in sorted((expected.get("torsion_ranks") or {}).items()):
        for k, want in sorted(per.items()):
            vals = report.torsion_ranks.get(str(p))
            got = vals[int(k)] if vals else None
            record(f"T_{k}^{p}", want, got, got == want)
    for k, want in sorted((expected.get("ranks") or {}).items()):
        got = report.ranks[int(k)]
        record(f"D_{k}", want, got, got == want)
    failed = [k for k, v in fields.items() if v["verdict"] == "FAIL"]
    if failed:
        verdict = "FAIL"
    elif report.status == "PARTIAL":
        verdict = "PARTIAL"
    else:
        verdict = "PASS"
    return {"verdict": verdict, "first_mismatch": failed[0] if failed else None, "fields": fields}


# ---------------------------------------------------------------------------
# human-readable table


def render_text(report: Report) -> str:
    lines = [f"scheme {report.scheme}  (d={report.d}, n={report.n})"]
    if report.params:
        lines.append("params  " + ", ".join(f"{k}={v}" for k, v in report.params.items()))
    lines.append("counts  " + ", ".join(f"{k}={v}" for k, v in report.counts.items() if not k.startswith("sum_")))
    for h in report.homology:
        inv = ",".join(map(str, h["invariant_factors"])) or "-"
        lines.append(f"  H_{h['degree']} = {h['group']:<30} invariant factors: {inv}")
    lines.append(f"euler   {report.euler}")
    for p, vals in report.modp_ranks.items():
        lines.append(f"F_{p}     D^p = {vals}   T^p = {report.torsion_ranks[p]}")
    if report.ktheory:
        lines.append(f"K^0 = {report.ktheory['K0']}    K^1 = {report.ktheory['K1']}")
    for key in ("t1_prime", "t1_double_prime", "t0_prime"):
        if key in report.diagnostics:
            lines.append(f"{key:<16}{report.diagnostics[key]}")
    band = report.diagnostics.get("torsion_band")
    if band:
        lines.append(f"torsion band: {'ok' if band['ok'] else 'VIOLATED ' + '; '.join(band['violations'])}")
    if report.ring:
        lines.append(f"ring {report.ring['ring']}: lengths {report.ring['lengths']}")
    if report.status != "OK":
        lines.append(f"status  {report.status}")
    if report.check:
        c = report.check
        lines.append(f"check   {c['verdict']}" + (f" (first mismatch: {c['first_mismatch']})" if c["first_mismatch"] else ""))
        for key, v in c["fields"].items():
            lines.append(f"  {v['verdict']:<5} {key}: expected {v['expected']}, got {v['got']}")
    if report.timing:
        lines.append("timing  " + ", ".join(f"{k}={v:.2f}s" for k, v in report.timing.items()))
    return "\n".join(lines)
