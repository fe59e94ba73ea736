"""Counts for the proper basis of B modulo Id(B,*) on multilinear spaces.

For each signature: dimension of the proper part, its intersection with the
identities of B, the enumerated proper basis, and the full quotient basis
obtained with sorted symmetric prefixes.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from starpi.exact import Echelon
from starpi.identities import MultilinearSpace, identity_kernel, independence_rank
from starpi.matrices import B
from starpi.normal_form import enumerate_B_basis, enumerate_B_quotient_basis, proper_span


@dataclass(frozen=True)
class BConfig:
    max_n: int = 5


def run(cfg: BConfig) -> None:
    print("sym skew | proper  proper&Id  basis(rank) | P_V  Id(B)  quotient-basis(rank)")
    for n in range(1, cfg.max_n + 1):
        for q in range(n + 1):
            space = MultilinearSpace.of(n - q, q)
            ker = Echelon(space.dimension)
            ker.extend({i: v for i, v in enumerate(vec) if v} for vec in identity_kernel(B, space))
            proper = proper_span(space)
            union = proper.copy()
            union.extend(ker.basis())
            both = proper.rank + ker.rank - union.rank
            basis = enumerate_B_basis(space)
            full = enumerate_B_quotient_basis(space)
            print(f"{n - q:3d} {q:4d} | {proper.rank:6d} {both:10d} {len(basis):6d}({independence_rank(basis, B, space) if basis else 0})"
                  f" | {space.dimension:3d} {ker.rank:6d} {len(full):6d}({independence_rank(full, B, space)})")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=BConfig.max_n)
    run(BConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
