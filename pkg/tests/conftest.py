import os

import pytest

_TIERS = (
    ("extended", "NULLSEQ_EXTENDED"),
    ("heavy", "NULLSEQ_HEAVY"),
)


def pytest_collection_modifyitems(config, items):
    """Tests marked `extended` (resp. `heavy`) only run when NULLSEQ_EXTENDED
    (resp. NULLSEQ_HEAVY) is set in the environment."""
    for marker, env in _TIERS:
        if os.environ.get(env):
            continue
        skip = pytest.mark.skip(reason=f"set {env}=1 to run {marker} checks")
        for item in items:
            if marker in item.keywords:
                item.add_marker(skip)
