import random

import pytest

from moorestems.fga import AbelianGroup, direct_sum

CYCLIC_ORDERS = [0, 2, 3, 4, 8, 9, 12, 24, 240]


def cyclic_battery() -> list[AbelianGroup]:
    return [AbelianGroup.cyclic(n) for n in CYCLIC_ORDERS]


def full_battery() -> list[AbelianGroup]:
    """The cyclic battery together with all 2-fold sums."""
    singles = cyclic_battery()
    out = list(singles)
    for i, a in enumerate(singles):
        for b in singles[i:]:
            out.append(direct_sum(a, b))
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
