import pytest
from hypothesis import HealthCheck, settings

from quotajudge.model import parse_instance

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


DOCTOR_TEXT = """\
judges 3
quota 1/2
vars s c m h
conc e = -s c
conc r = -m -h
judge 1: s=1 c=0 m=1 h=1
judge 2: s=1 c=1 m=0 h=1
judge 3: s=0 c=0 m=1 h=0
"""

CHAIN_TEXT = """\
judges 3
quota 1/2
vars x1 x2 x3 x3p x4
conc c1 = x1 x2
conc c2 = x2 x3
conc c3 = x3 x3p
conc c4 = x3 x4
judge 1: x1=1 x2=0 x3=1 x3p=1 x4=1
judge 2: x1=0 x2=0 x3=0 x3p=0 x4=1
judge 3: x1=1 x2=1 x3=0 x3p=0 x4=0
manipulator 3
desired: c1=1 c2=1 c3=0 c4=0
"""


@pytest.fixture
def doctor():
    """Four medical premises, two disjunctive conclusions, three judges."""
    return parse_instance(DOCTOR_TEXT)


@pytest.fixture
def chain():
    """Five premises chained through four disjunctions, judge 3 manipulating."""
    return parse_instance(CHAIN_TEXT)


@pytest.fixture
def doctor_file(tmp_path):
    p = tmp_path / "doctor.txt"
    p.write_text(DOCTOR_TEXT)
    return str(p)


@pytest.fixture
def chain_file(tmp_path):
    p = tmp_path / "chain.txt"
    p.write_text(CHAIN_TEXT)
    return str(p)
