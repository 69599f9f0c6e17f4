"""Shared corpus fixtures.

The corpus is built once per session: every group of order <= 16, the
square-root Bruck loops of orders 21 and 27, elementary abelian 2-groups
up to order 32, the nonassociative exponent-2 loop of order 8, and direct
products mixing odd and 2-power parts.
"""

import pytest

from loopkit import tables as tb
from loopkit.loopcore import direct_product, is_commutative
from loopkit.search import glauberman_loop


@pytest.fixture(scope="session")
def groups16():
    return tb.all_groups_up_to_16()


@pytest.fixture(scope="session")
def nonbol5():
    """A nonassociative (hence non-Bol) order-5 loop, frozen search output."""
    from loopkit.loopcore import Loop
    return Loop([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])


@pytest.fixture(scope="session")
def loop21():
    return glauberman_loop(tb.frobenius21_group())


@pytest.fixture(scope="session")
def loop27():
    return glauberman_loop(tb.regular_representation(tb.heisenberg3()))


@pytest.fixture(scope="session")
def na8():
    return tb.bruck_exponent2_8()


@pytest.fixture(scope="session")
def loop168(loop21):
    return direct_product(loop21, tb.elementary_abelian(3))


@pytest.fixture(scope="session")
def roundtrip_corpus(groups16, loop21, loop27, loop168):
    """The acceptance-3 corpus: >= 20 loops including big direct products."""
    loops = [(name, g) for name, g in groups16]
    loops += [
        ("glauberman21", loop21),
        ("glauberman27", loop27),
        ("EA16", tb.elementary_abelian(4)),
        ("EA32", tb.elementary_abelian(5)),
        ("na8", tb.bruck_exponent2_8()),
        ("C3xEA8", direct_product(tb.cyclic(3), tb.elementary_abelian(3))),
        ("glauberman21xEA8", loop168),
    ]
    return loops


@pytest.fixture(scope="session")
def bruck_corpus_small(groups16, loop21, loop27, na8):
    """Bruck corpus members of order <= 32 (abelian groups are the Bruck groups)."""
    loops = [(name, g) for name, g in groups16 if is_commutative(g)]
    loops += [
        ("glauberman21", loop21),
        ("glauberman27", loop27),
        ("na8", na8),
        ("EA32", tb.elementary_abelian(5)),
        ("C3xEA8", direct_product(tb.cyclic(3), tb.elementary_abelian(3))),
        ("C3xC2", direct_product(tb.cyclic(3), tb.cyclic(2))),
        ("na8xC3", direct_product(na8, tb.cyclic(3))),
    ]
    return loops


@pytest.fixture(scope="session")
def bx2p_corpus(groups16, na8):
    """Bruck loops of 2-power exponent: abelian 2-groups and the order-8 find."""
    loops = [(name, g) for name, g in groups16
             if is_commutative(g) and g.n & (g.n - 1) == 0]
    loops.append(("na8", na8))
    loops.append(("EA32", tb.elementary_abelian(5)))
    loops.append(("na8xEA4", direct_product(na8, tb.elementary_abelian(2))))
    return loops
