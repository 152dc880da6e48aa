import pytest

from charp import RingPresentation


def make_a2():
    return RingPresentation.make(3, ["x", "y"], name="A2")


def make_hs():
    return RingPresentation.make(5, ["x", "y", "z", "w"], ["x*y - z*w"], name="HS")


def make_gr(p=2):
    rel = f"u*x^{p} + v*y^{p} + w*z^{p}"
    return RingPresentation.make(p, ["u", "v", "w", "x", "y", "z", "t"], [rel, "u*t - 1"],
                                 local=["x", "y", "z"], name=f"GR{p}")


@pytest.fixture(scope="session")
def A2():
    return make_a2()


@pytest.fixture(scope="session")
def HS():
    return make_hs()


@pytest.fixture(scope="session")
def GR():
    return make_gr(2)


@pytest.fixture(scope="session")
def GR3():
    return make_gr(3)


# --------------------------------------------------------------------------
# every closure oracle built during the session is kept so that the
# acceptance suite can audit all computed closure instances at the end

LIVE_ORACLES = []


@pytest.fixture(autouse=True, scope="session")
def _track_oracles():
    from charp.closures import EffectiveClosure

    original = EffectiveClosure.__init__

    def tracked(self, *a, **kw):
        original(self, *a, **kw)
        LIVE_ORACLES.append(self)

    EffectiveClosure.__init__ = tracked
    yield
    EffectiveClosure.__init__ = original


def pytest_collection_modifyitems(session, config, items):
    # acceptance criteria run last, in criterion order, so the closure audit
    # sees every instance computed by the rest of the suite
    def key(item):
        if item.module.__name__.endswith("test_acceptance"):
            return (1, getattr(item.function, "criterion", 0))
        return (0, 0)

    items.sort(key=key)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
