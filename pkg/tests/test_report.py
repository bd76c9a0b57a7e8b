"""Report serialization: determinism, float formatting, pass semantics."""

import numpy as np

from shiftlog.report import (
    VerificationReport,
    all_passed,
    fmt_float,
    render_csv,
    render_json,
)


def sample_reports():
    return [
        VerificationReport("bch", "order_law_k1", "product-series-order-law",
                           0.0, 0.0, runtime_ms=12.5),
        VerificationReport("matfun", "roundtrip", "principal-log-roundtrip",
                           3.0e-11, 1.0e-8, runtime_ms=300.0),
        VerificationReport("matfun", "agreement", "independent-log-algorithms",
                           2.0e-7, 1.0e-8, runtime_ms=5.0),
    ]


def test_pass_iff_residual_within_tolerance():
    reports = sample_reports()
    assert reports[0].passed and reports[1].passed
    assert not reports[2].passed
    assert not all_passed(reports)
    assert all_passed(reports[:2])


def test_float_formatting_17_digits():
    assert fmt_float(1.0 / 3.0) == "0.33333333333333331"
    assert fmt_float(float("inf")) == '"inf"'
    assert fmt_float(float("nan")) == '"nan"'
    # 17 significant digits round-trip exactly
    x = np.random.default_rng(0).uniform()
    assert float(fmt_float(x)) == x


def test_json_is_deterministic_and_ordered():
    a = render_json(sample_reports(), meta={"seed": 1})
    b = render_json(list(reversed(sample_reports())), meta={"seed": 1})
    assert a == b  # ordering is by (suite, case), not insertion
    # runtimes are pinned in serialized output
    assert '"runtime_ms": 0' in a
    assert a.index('"bch"') < a.index('"matfun"')


def test_csv_layout():
    text = render_csv(sample_reports())
    lines = text.strip().split("\n")
    assert lines[0] == "suite,case,anchor,residual,tolerance,pass,runtime_ms"
    assert len(lines) == 4
    assert lines[1].startswith("bch,order_law_k1,")
    assert ",true," in lines[1] and ",false," in lines[2]
