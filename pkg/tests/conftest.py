import sys
from pathlib import Path

# make the shared oracles importable from any test module
sys.path.insert(0, str(Path(__file__).parent))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks")
    config.addinivalue_line("markers", "acceptance: spec acceptance criteria")
