from __future__ import annotations

import pytest

from spin7ac.projectors import build_projectors


@pytest.fixture(scope="session")
def table():
    """The certified projector table (built once per session)."""
    return build_projectors()
