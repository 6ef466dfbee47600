"""Batch sweeps: enumerate instances from a config, verify them (optionally
in parallel), and emit byte-stable JSONL/CSV reports.

Determinism contract: a config plus its seed pins the full instance list
and every sampled value, so two runs differ in nothing — including worker
count.  Randomness is drawn from a fresh generator seeded per instance
(never from a shared stream), workers only compute, and records are sorted
by (p, order, poly, detail) before anything is written.  Wall-clock time is
deliberately absent from the serialized records.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Sequence

from .bounds import (
    ProbeConfig,
    probe_factorization,
    probe_growth,
    verify_fiber_bound,
    verify_image_lower_bound,
    verify_level_pair_bound,
    verify_shift_overlap_bound,
)
from .errors import BudgetExceeded, ConfigError, DegreeOverflow, ParseError
from .field import EXT_ELEMENT_BUDGET, Prime, divisors, is_prime_u64, make_prime
from .poly import UniPoly, parse_bipoly
from .setops import DEFAULT_MAX_PAIRS, value_set
from .subgroup import Subgroup, coset_of, subgroup_of_order

SCHEMA_VERSION = 1
KINDS = ("t2", "vm", "gv", "thmap", "growth", "probe")
CSV_COLUMNS = (
    "schema",
    "kind",
    "p",
    "order",
    "generator",
    "poly",
    "detail",
    "premise_ok",
    "premise_reason",
    "lhs",
    "rhs",
    "holds",
    "borderline",
    "ratio",
    "extra",
    "seed",
)

# used only to syntax-check expressions before any per-prime parse
_SYNTAX_CHECK_PRIME = 2147483647


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep description; build one with from_json/from_file."""

    inequality: str
    primes: tuple[int, ...]
    orders: Any  # "all" | tuple of ints | ("admitted_for_n", n)
    polys: tuple[str, ...]
    params: dict[str, Any] = dc_field(default_factory=dict)
    seed: int = 0
    max_pairs: int = DEFAULT_MAX_PAIRS
    ext_elements: int = EXT_ELEMENT_BUDGET
    jobs: int = 1

    @staticmethod
    def from_json(data: dict) -> "SweepConfig":
        if not isinstance(data, dict):
            raise ConfigError("config: must be a JSON object")
        kind = data.get("inequality")
        if kind not in KINDS:
            raise ConfigError(f"inequality: must be one of {'|'.join(KINDS)}, got {kind!r}")

        primes_raw = data.get("primes")
        if isinstance(primes_raw, dict):
            try:
                start, stop = int(primes_raw["start"]), int(primes_raw["stop"])
            except (KeyError, TypeError, ValueError) as e:
                raise ConfigError(f"primes: need integer start/stop ({e})") from None
            if not 3 <= start <= stop:
                raise ConfigError("primes: need 3 <= start <= stop")
            primes = tuple(n for n in range(start | 1, stop + 1, 2) if is_prime_u64(n))
        elif isinstance(primes_raw, list) and primes_raw:
            primes = []
            for i, v in enumerate(primes_raw):
                if not isinstance(v, int) or not is_prime_u64(v) or v < 3:
                    raise ConfigError(f"primes[{i}]: {v!r} is not an odd prime")
                primes.append(v)
            primes = tuple(sorted(set(primes)))
        else:
            raise ConfigError("primes: need {start, stop} or a nonempty list")

        orders_raw = data.get("orders", "all")
        if orders_raw == "all":
            orders: Any = "all"
        elif isinstance(orders_raw, list) and orders_raw:
            for i, v in enumerate(orders_raw):
                if not isinstance(v, int) or v < 1:
                    raise ConfigError(f"orders[{i}]: {v!r} is not a positive integer")
            orders = tuple(sorted(set(orders_raw)))
        elif isinstance(orders_raw, dict) and set(orders_raw) == {"admitted_for_n"}:
            n = orders_raw["admitted_for_n"]
            if not isinstance(n, int) or n < 1:
                raise ConfigError("orders.admitted_for_n: need a positive integer")
            orders = ("admitted_for_n", n)
        else:
            raise ConfigError('orders: need "all", a list, or {"admitted_for_n": n}')

        polys_raw = data.get("polys", [])
        if not isinstance(polys_raw, list):
            raise ConfigError("polys: must be a list of expressions")
        for i, text in enumerate(polys_raw):
            if not isinstance(text, str):
                raise ConfigError(f"polys[{i}]: must be a string")
            try:
                parse_bipoly(text, _SYNTAX_CHECK_PRIME)
            except (ParseError, DegreeOverflow) as e:
                raise ConfigError(f"polys[{i}]: {text!r}: {e}") from None
        if kind in ("t2", "vm", "probe") and not polys_raw:
            raise ConfigError(f"polys: {kind} sweeps need at least one expression")

        params = data.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError("params: must be an object")

        seed = data.get("seed", 0)
        if not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ConfigError("seed: need an integer in [0, 2^64)")

        budgets = data.get("budgets", {})
        if not isinstance(budgets, dict):
            raise ConfigError("budgets: must be an object")
        max_pairs = budgets.get("max_pairs", DEFAULT_MAX_PAIRS)
        if not isinstance(max_pairs, int) or max_pairs < 1:
            raise ConfigError("budgets.max_pairs: need a positive integer")
        ext_elements = budgets.get("ext_elements", EXT_ELEMENT_BUDGET)
        if not isinstance(ext_elements, int) or ext_elements < 2:
            raise ConfigError("budgets.ext_elements: need an integer >= 2")

        jobs = data.get("jobs", 1)
        if not isinstance(jobs, int) or jobs < 1:
            raise ConfigError("jobs: need a positive integer")

        return SweepConfig(
            kind,
            primes,
            orders,
            tuple(polys_raw),
            dict(params),
            seed,
            max_pairs,
            ext_elements,
            jobs,
        )

    @staticmethod
    def from_file(path: str) -> "SweepConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config: invalid JSON: {e}") from None
        return SweepConfig.from_json(data)


@functools.lru_cache(maxsize=None)
def _prime(p: int) -> Prime:
    return make_prime(p)


@functools.lru_cache(maxsize=512)
def _subgroup(p: int, d: int) -> Subgroup:
    return subgroup_of_order(_prime(p), d)


def _orders_for(cfg: SweepConfig, p: int) -> list[int]:
    ds = divisors(p - 1)
    if cfg.orders == "all":
        picked = ds
    elif isinstance(cfg.orders, tuple) and cfg.orders and cfg.orders[0] == "admitted_for_n":
        n = cfg.orders[1]
        picked = [d for d in ds if 100 * n**3 < d and 9 * d * d < p]
    else:
        wanted = set(cfg.orders)
        picked = [d for d in ds if d in wanted]
    if cfg.inequality in ("growth", "probe"):
        picked = [d for d in picked if d >= 2]
    return picked


def _rng(cfg: SweepConfig, *parts) -> random.Random:
    return random.Random("|".join([str(cfg.seed), *map(str, parts)]))


def _sample_distinct_coset_values(rng: random.Random, G: Subgroup, h: int) -> list[int]:
    """h nonzero values in pairwise-distinct G-cosets (h capped by coset count)."""
    p = G.p
    h = min(h, (p - 1) // G.order)
    seen_reps: set[int] = set()
    out: list[int] = []
    while len(out) < h:
        v = rng.randrange(1, p)
        rep = min(v * g % p for g in G.elements)
        if rep not in seen_reps:
            seen_reps.add(rep)
            out.append(v)
    return sorted(out)


def generate_instances(cfg: SweepConfig) -> list[dict]:
    """The full deterministic worklist; each entry is picklable and sortable."""
    out: list[dict] = []
    kind = cfg.inequality
    for p in cfg.primes:
        for d in _orders_for(cfg, p):
            if kind == "gv":
                if "mu_sample" in cfg.params:
                    count = int(cfg.params["mu_sample"])
                    rng = _rng(cfg, p, d, "mu")
                    mus: Iterable[int] = sorted(rng.sample(range(1, p), min(count, p - 1)))
                else:
                    mus = range(1, p)
                for mu in mus:
                    out.append({"kind": kind, "p": p, "order": d, "poly": "", "mu": mu})
            elif kind == "growth":
                out.append({"kind": kind, "p": p, "order": d, "poly": ""})
            elif kind == "t2":
                for poly in cfg.polys:
                    out.append({"kind": kind, "p": p, "order": d, "poly": poly})
            elif kind == "vm":
                h = int(cfg.params.get("alpha_count", 1))
                trials = int(cfg.params.get("alpha_sets", 1))
                for poly in cfg.polys:
                    for t in range(trials):
                        rng = _rng(cfg, p, d, poly, "vm", t)
                        G = _subgroup(p, d)
                        alphas = _sample_distinct_coset_values(rng, G, h)
                        out.append(
                            {"kind": kind, "p": p, "order": d, "poly": poly, "alphas": alphas}
                        )
            elif kind == "thmap":
                trials = int(cfg.params.get("pair_count", 1))
                for t in range(trials):
                    rng = _rng(cfg, p, d, "thmap", t)
                    a = rng.randrange(1, p)
                    b = rng.randrange(1, p)
                    while b == a:
                        b = rng.randrange(1, p)
                    shifts = sorted((a, b))
                    reps = [rng.randrange(1, p), rng.randrange(1, p)]
                    out.append(
                        {
                            "kind": kind,
                            "p": p,
                            "order": d,
                            "poly": f"x+{shifts[0]};x+{shifts[1]}",
                            "shifts": shifts,
                            "coset_reps": reps,
                        }
                    )
            elif kind == "probe":
                size = int(cfg.params.get("set_size", 4))
                trials = int(cfg.params.get("trials", 1))
                delta = float(cfg.params.get("delta", 0.5))
                epsilon = float(cfg.params.get("epsilon", 0.25))
                for poly in cfg.polys:
                    for t in range(trials):
                        rng = _rng(cfg, p, d, poly, "probe", t)
                        G = _subgroup(p, d)
                        k = max(2, min(size, d))
                        A = sorted(rng.sample(G.elements, k))
                        B = sorted(rng.sample(G.elements, k))
                        out.append(
                            {
                                "kind": kind,
                                "p": p,
                                "order": d,
                                "poly": poly,
                                "A": A,
                                "B": B,
                                "delta": delta,
                                "epsilon": epsilon,
                            }
                        )
    for inst in out:
        inst["seed"] = cfg.seed
        inst["max_pairs"] = cfg.max_pairs
        inst["ext_elements"] = cfg.ext_elements
    return out


def _detail(inst: dict) -> str:
    kind = inst["kind"]
    if kind == "gv":
        return f"mu={inst['mu']}"
    if kind == "vm":
        return "alphas=" + ",".join(map(str, inst["alphas"]))
    if kind == "thmap":
        return "cosets=" + ",".join(map(str, inst["coset_reps"]))
    if kind == "probe":
        return (
            "A=" + ",".join(map(str, inst["A"])) + ";B=" + ",".join(map(str, inst["B"]))
        )
    return ""


def _base_record(inst: dict) -> dict:
    G = _subgroup(inst["p"], inst["order"])
    return {
        "schema": SCHEMA_VERSION,
        "kind": inst["kind"],
        "p": inst["p"],
        "order": inst["order"],
        "generator": G.generator,
        "poly": inst["poly"],
        "detail": _detail(inst),
        "premise_ok": False,
        "premise_reason": "",
        "lhs": 0,
        "rhs": 0.0,
        "holds": None,
        "borderline": False,
        "ratio": 0.0,
        "extra": {},
        "seed": inst["seed"],
    }


def run_instance(inst: dict) -> dict:
    """Verify one instance and return its flat record (top-level so process
    pools can pickle it).  Budget overruns become per-record errors."""
    rec = _base_record(inst)
    p, d = inst["p"], inst["order"]
    prime = _prime(p)
    G = _subgroup(p, d)
    kind = inst["kind"]
    try:
        if kind == "gv":
            v = verify_shift_overlap_bound(G, inst["mu"])
        elif kind == "t2":
            v = verify_image_lower_bound(
                parse_bipoly(inst["poly"], prime),
                G,
                max_pairs=inst["max_pairs"],
                ext_budget=inst["ext_elements"],
            )
        elif kind == "vm":
            v = verify_level_pair_bound(
                parse_bipoly(inst["poly"], prime),
                G,
                value_set(prime, inst["alphas"]),
                max_pairs=inst["max_pairs"],
                ext_budget=inst["ext_elements"],
            )
        elif kind == "thmap":
            fs = [
                UniPoly.from_list(p, [a % p, 1]) for a in inst["shifts"]
            ]
            cosets = [coset_of(r, G) for r in inst["coset_reps"]]
            v = verify_fiber_bound(fs, cosets, G)
        elif kind == "growth":
            g = probe_growth(G, max_pairs=inst["max_pairs"])
            rec["premise_ok"] = True
            rec["extra"] = {
                "sum_size": g.sum_size,
                "diff_size": g.diff_size,
                "sum_over_pow43": g.sum_over_pow43,
                "diff_over_pow43": g.diff_over_pow43,
                "sum_log_over_pow53": g.sum_log_over_pow53,
                "diff_log_over_pow53": g.diff_log_over_pow53,
                "sum_over_pow32": g.sum_over_pow32,
                "diff_over_pow32": g.diff_over_pow32,
            }
            return rec
        elif kind == "probe":
            pr = probe_factorization(
                parse_bipoly(inst["poly"], prime),
                value_set(prime, inst["A"]),
                value_set(prime, inst["B"]),
                G,
                ProbeConfig(inst["delta"], inst["epsilon"]),
                max_pairs=inst["max_pairs"],
            )
            rec["premise_ok"] = True
            rec["extra"] = {
                "size_a": pr.size_a,
                "size_b": pr.size_b,
                "image_size": pr.image_size,
                "is_representation": pr.is_representation,
                "exponent_a": pr.exponent_a,
                "exponent_b": pr.exponent_b,
                "in_band": pr.in_band,
                "delta": pr.delta,
                "epsilon": pr.epsilon,
                "min_q": pr.min_q,
            }
            return rec
        else:  # pragma: no cover - configs are validated upstream
            raise ConfigError(f"unknown kind {kind!r}")
    except BudgetExceeded as e:
        rec["premise_reason"] = f"budget: {e}"
        rec["extra"] = {"error": "budget"}
        return rec
    rec["premise_ok"] = v.premise_ok
    rec["premise_reason"] = v.premise_reason
    rec["lhs"] = v.lhs
    rec["rhs"] = v.rhs
    rec["holds"] = v.holds
    rec["borderline"] = v.borderline
    rec["ratio"] = v.ratio
    return rec


def _record_key(rec: dict) -> tuple:
    # generation order is already deterministic and numerically natural, so
    # the stable sort only needs the coarse key; ties keep their enumeration
    # order (e.g. mu=2 stays ahead of mu=10)
    return (rec["p"], rec["order"], rec["poly"])


def run_sweep(cfg: SweepConfig, jobs: int | None = None) -> list[dict]:
    """All records for the config, sorted by (p, order, poly, detail).

    The worker count changes scheduling only; instance generation and every
    sampled value happen before fan-out, so the records are identical for
    any value of jobs.
    """
    instances = generate_instances(cfg)
    n_jobs = jobs if jobs is not None else cfg.jobs
    if n_jobs <= 1 or len(instances) < 2:
        records = [run_instance(inst) for inst in instances]
    else:
        chunk = max(1, len(instances) // (n_jobs * 8))
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            records = list(pool.map(run_instance, instances, chunksize=chunk))
    records.sort(key=_record_key)
    return records


def count_violations(records: Iterable[dict]) -> int:
    """Premise-met records where the inequality failed (a counterexample)."""
    return sum(1 for r in records if r["premise_ok"] and r["holds"] is False)


def _json_line(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def render_report(records: Sequence[dict], fmt: str) -> str:
    """Serialize records to one deterministic string (jsonl or csv)."""
    if fmt == "jsonl":
        return "".join(_json_line(r) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([_csv_cell(rec[col]) for col in CSV_COLUMNS])
        return buf.getvalue()
    raise ConfigError(f"format: unknown {fmt!r} (expected jsonl or csv)")


def emit_report(records: Sequence[dict], fmt: str, path: str) -> None:
    """Write the rendered report; '-' streams to stdout."""
    text = render_report(records, fmt)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
