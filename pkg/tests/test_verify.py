from photon_subsets.verify import SUITES, Check, suite_projector


def test_check_kinds():
    assert Check("a", 1e-12, 1e-10).passed
    assert not Check("a", 1e-9, 1e-10).passed
    assert Check("w", 0.5, 1e-6, kind="witness").passed
    assert not Check("w", 1e-8, 1e-6, kind="witness").passed
    assert "[PASS]" in Check("a", 0.0, 0.0, cases=3).line()


def test_suites_are_deterministic():
    first = [c.max_error for c in suite_projector(seed=7)]
    second = [c.max_error for c in suite_projector(seed=7)]
    assert first == second


def test_cli_suite_names():
    for name in ("eq8", "eq9", "eq13", "eq14", "eq16", "eq17", "loss", "commutation", "oracle", "purity"):
        assert name in SUITES
