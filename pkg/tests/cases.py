"""Categories shared by several test modules."""

from functools import lru_cache

from fuscat import cocycle as cc
from fuscat.grp import parse_group
from fuscat.pointed import PointedCategory

THREE_ROUTE_GROUPS = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4", "S3"]


@lru_cache(maxsize=None)
def basis(name: str):
    G = parse_group(name)
    return cc.cohomology_basis(G, G.order)


def categories(names=THREE_ROUTE_GROUPS):
    """(label, PointedCategory) for the trivial cocycle and every basis representative."""
    out = []
    for name in names:
        G = parse_group(name)
        out.append((f"{name}/trivial", PointedCategory(G)))
        for i, w in enumerate(basis(name).representatives):
            out.append((f"{name}/basis{i}", PointedCategory(G, w)))
    return out
