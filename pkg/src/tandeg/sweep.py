"""Parameter sweep over the theorem1 curve family."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Iterable, Sequence

from .constructors import Theorem1Params, default_ext_deg, theorem1
from .errors import TandegError
from .gauss import gauss_degree, tangency_profile_symbolic, tangency_sampled, thread_count

COLUMNS = ["p", "q", "n", "degree", "generic_count", "leg", "sampled_count", "gauss_degree",
           "separable", "status", "wall_s"]


def valid_triples(ps: Iterable[int], n_max: int, q_max: int | None = None) -> list[Theorem1Params]:
    out = []
    for p in ps:
        if p == 2:
            continue
        top = q_max if q_max is not None else p * p
        q = p
        while q <= top:
            for n in range(1, n_max + 1):
                if Theorem1Params.hypothesis_holds(q, n):
                    out.append(Theorem1Params(p, q, n))
            q *= p
    return out


def run_row(params: Theorem1Params, symbolic_cap: int, samples: int, seed: int,
            max_degree: int | None = None) -> dict[str, Any]:
    row: dict[str, Any] = {**params.to_dict(), "degree": params.degree}
    t0 = time.perf_counter()
    if max_degree is not None and params.degree > max_degree:
        row.update(status=f"skipped(budget): degree {params.degree} > {max_degree}", wall_s=0.0)
        return row
    try:
        c = theorem1(params)
        avoid = None
        if c.degree <= symbolic_cap:
            prof = tangency_profile_symbolic(c)
            avoid = prof.details["bad_locus_poly"]
            deg, sep = gauss_degree(c)
            row.update(generic_count=prof.generic_count, gauss_degree=deg, separable=sep, leg="both")
        else:
            row.update(generic_count="skipped(degree)", gauss_degree="skipped(degree)",
                       separable="skipped(degree)", leg="sampled")
        smp = tangency_sampled(c, default_ext_deg(c, samples), samples, seed, avoid=avoid, threads=1)
        row["sampled_count"] = smp.generic_count
        expected = params.q - 2
        ok = smp.generic_count == expected and row.get("generic_count") in (expected, "skipped(degree)")
        if row.get("gauss_degree") not in (1, "skipped(degree)"):
            ok = False
        row["status"] = "ok" if ok else "mismatch"
    except TandegError as e:
        row["status"] = f"error: {type(e).__name__}: {e}"
    row["wall_s"] = round(time.perf_counter() - t0, 3)
    return row


def sweep(ps: Sequence[int], n_max: int, q_max: int | None = None, symbolic_cap: int = 2000,
          samples: int = 50, seed: int = 0, max_degree: int | None = None,
          threads: int | None = None) -> list[dict[str, Any]]:
    triples = valid_triples(ps, n_max, q_max)
    n = threads or thread_count()
    work = lambda prm: run_row(prm, symbolic_cap, samples, seed, max_degree)  # noqa: E731
    if n > 1:
        with ThreadPoolExecutor(n) as ex:
            return list(ex.map(work, triples))
    return [work(t) for t in triples]


def write_csv(rows: list[dict[str, Any]], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=COLUMNS, extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: r.get(k, "") for k in COLUMNS})
