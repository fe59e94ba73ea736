"""Cardinality and rank modulo Id(A,*) of the enumerated independence sets.

Covers Omega_y (all symmetric), Omega_z (one skew minimum, strict and with the
empty middle commutator) and the two-commutator canonical shapes.  Also prints
the gap between their span and the full quotient P_V / Id(A,*).
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from starpi.identities import MultilinearSpace, independence_rank, kernel_dimension
from starpi.matrices import A
from starpi.normal_form import canonical_shapes, enumerate_omega_y, enumerate_omega_z


@dataclass(frozen=True)
class RankConfig:
    max_n: int = 5


def run(cfg: RankConfig) -> None:
    for n in range(4, cfg.max_n + 1):
        ys = MultilinearSpace.of(n, 0)
        om = enumerate_omega_y(ys)
        print(f"Omega_y       n={n}: size {len(om):3d}  rank {independence_rank(om, A, ys):3d}")
        for q in range(1, n + 1):
            space = MultilinearSpace.of(n - q, q)
            strict = enumerate_omega_z(space, degenerate=False)
            full = enumerate_omega_z(space)
            shapes = [s.poly() for s in canonical_shapes(space)]
            quotient = space.dimension - kernel_dimension(A, space)
            print(f"Omega_z  ({n - q},{q}) n={n}: strict {len(strict):3d}/{independence_rank(strict, A, space):3d}  "
                  f"with s=0 {len(full):3d}/{independence_rank(full, A, space):3d}  "
                  f"shapes {len(shapes):3d}/{independence_rank(shapes, A, space):3d}  "
                  f"dim P_V/Id {quotient}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=RankConfig.max_n)
    run(RankConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
