import pytest

from ssspx.models.schemas import FallbackMode, SolverConfig


@pytest.fixture(autouse=True)
def _no_debug_env(monkeypatch):
    monkeypatch.delenv('SSSPX_DEBUG_CHECKS', raising=False)


@pytest.fixture
def recursion_config():
    """Recursion forced on, small t, all debug checks."""
    def make(t: int = 2, k: int = 2, delta: int = 3, debug: bool = True) -> SolverConfig:
        return SolverConfig(debug_checks=debug, fallback=FallbackMode.NEVER,
                            force_t=t, force_k=k, force_delta=delta)
    return make


@pytest.fixture
def write_gr(tmp_path):
    def write(text: str, name: str = 'g.gr'):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write
