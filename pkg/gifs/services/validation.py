"""
GIFS Contractivity Validation
Reports per-map Lipschitz bounds and the system contraction constant c
"""

from dataclasses import dataclass, field
from typing import List, Optional

import structlog

from gifs.models.system import AffineMap, GifsSystem
from gifs.services.hutchinson import lipschitz_bound

logger = structlog.get_logger()


@dataclass
class MapBound:
    """Lipschitz bound of one map, None when it cannot be computed"""
    index: int
    bound: Optional[float]
    is_affine: bool


@dataclass
class ContractivityReport:
    """Summary of a contractivity check"""
    passed: bool
    c: Optional[float]
    bounds: List[MapBound]
    unverified: List[int] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def is_fully_verified(self) -> bool:
        return not self.unverified


def validate_contractive(G: GifsSystem) -> ContractivityReport:
    """
    Frobenius Lipschitz bound per affine map and c = max over the verified maps
    Generic maps are listed as unverified, never failed
    """
    bounds: List[MapBound] = []
    unverified: List[int] = []
    warnings: List[str] = []

    for index, f in enumerate(G.maps, start=1):
        if isinstance(f, AffineMap):
            bounds.append(MapBound(index=index, bound=lipschitz_bound(f), is_affine=True))
        else:
            bounds.append(MapBound(index=index, bound=None, is_affine=False))
            unverified.append(index)
            warnings.append(f"Map {index} is not affine; contractivity accepted unverified")

    verified = [b.bound for b in bounds if b.bound is not None]
    c = max(verified) if verified else None
    passed = c is None or c < 1

    for b in bounds:
        if b.bound is not None and b.bound >= 1:
            warnings.append(f"Map {b.index} has Lipschitz bound {b.bound:.6g} >= 1")

    if unverified:
        logger.warning("Generic maps accepted without contractivity check", maps=unverified)
    if not passed:
        logger.warning("System failed contractivity check", c=c)

    return ContractivityReport(
        passed=passed,
        c=c,
        bounds=bounds,
        unverified=unverified,
        warnings=warnings,
    )
