import pytest

from hillduffing.beam import ModePair, simulate


@pytest.fixture(scope="session")
def beam_runs():
    """Session cache of (1, 2) two-mode simulations keyed by delta.

    Several test modules probe the same deltas around the instability
    interval; each simulation costs around a second, so they are shared.
    """
    cache = {}
    pair = ModePair(1, 2)

    def run(delta, **kwargs):
        key = (delta, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = simulate(pair, delta, **kwargs)
        return cache[key]

    return run
