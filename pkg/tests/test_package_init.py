"""Tests for package-level exports."""

import finmono
from finmono import __all__, __version__


def test_public_exports_match_symbols():
    """All __all__ exports should be importable and have correct names."""
    for name in __all__:
        assert hasattr(finmono, name), name

    for name in ("ArtinSchreierFamily", "CycNum", "ScanReport", "TableFamily"):
        assert name in __all__
        assert getattr(finmono, name).__name__ == name


def test_version_is_exported():
    assert __version__ == "0.1.0"
    assert "__version__" in __all__
