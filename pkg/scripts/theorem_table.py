"""Tabulate dim(I n P_V) against dim(Id(A,*) n P_V) for every parity signature.

    python3 scripts/theorem_table.py --max-n 5 --out results/theorem_table.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from starpi.identities import EngineConfig, MultilinearSpace
from starpi.tideal import verify_main_theorem


@dataclass(frozen=True)
class TableConfig:
    min_n: int = 3
    max_n: int = 5
    jobs: int = 1
    out: str | None = None


def run(cfg: TableConfig) -> list[dict]:
    engine = EngineConfig(max_degree=max(cfg.max_n, 6), jobs=cfg.jobs)
    rows = []
    for n in range(cfg.min_n, cfg.max_n + 1):
        for skew in range(n + 1):
            t0 = time.perf_counter()
            rep = verify_main_theorem(MultilinearSpace.of(n - skew, skew), engine)
            row = rep.to_dict() | {"n": n, "seconds": round(time.perf_counter() - t0, 2)}
            rows.append(row)
            print(f"n={n} sym={rep.sym} skew={rep.skew}  |P_V|={rep.dim_space:4d}  I={rep.dim_ideal:4d}  "
                  f"Id={rep.dim_kernel:4d}  equal={rep.equal} contained={rep.contained}  {row['seconds']}s", flush=True)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=TableConfig.min_n)
    ap.add_argument("--max-n", type=int, default=TableConfig.max_n)
    ap.add_argument("--jobs", type=int, default=TableConfig.jobs)
    ap.add_argument("--out")
    cfg = TableConfig(**vars(ap.parse_args()))
    rows = run(cfg)
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))


if __name__ == "__main__":
    main()
